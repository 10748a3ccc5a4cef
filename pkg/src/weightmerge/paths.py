"""Optimal weight redistribution for contractions on weighted paths.

All planners orient the path from its head (see
:meth:`WeightedGraph.path_order`), so "left" means nearer the head.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotAdjacentSupernodes, NotAMatching, NotContiguous, NotAPath, ValidationError
from .graph import (
    ContractionRequest,
    GraphKind,
    Mode,
    Number,
    Redistribution,
    WeightedGraph,
    to_fraction,
)


class PathCase(enum.Enum):
    SINGLE_EDGE = "single"
    SUPERNODE_PAIR = "supernode-pair"
    SUBPATH = "subpath"
    INDEPENDENT_SET = "independent"


@dataclass(frozen=True)
class PathMergePlan:
    case: PathCase
    redistribution: Redistribution
    predicted_error: Fraction
    multiplicity: dict = field(default_factory=dict)


def _layout(p: WeightedGraph) -> tuple[list, list[int], dict[int, int]]:
    if p.kind is not GraphKind.PATH:
        raise NotAPath("graph is not a path")
    verts, order = p.path_order()
    return verts, order, {eid: i for i, eid in enumerate(order)}


def _position(pos: dict[int, int], eid: int, p: WeightedGraph) -> int:
    p.edge(eid)
    return pos[eid]


def merge_single_edge(p: WeightedGraph, e_star: int) -> PathMergePlan:
    """Contract one path edge; mark its left neighbour when there is one."""
    _, order, pos = _layout(p)
    i = _position(pos, e_star, p)
    w_star = p.weight(e_star)
    deltas = {order[i - 1]: w_star} if i > 0 else {}
    return PathMergePlan(
        PathCase.SINGLE_EDGE, Redistribution(deltas), (p.n - 2) * w_star
    )


def merge_supernode_pair(
    p: WeightedGraph, e_star: int, card_left: int, card_right: int
) -> PathMergePlan:
    """Contract an edge whose endpoints already are supernodes.

    ``p`` is the current (contracted) path; the left endpoint of ``e_star``
    stands for ``card_left`` original vertices and the right one for
    ``card_right``.  All other vertices count once.  The neighbour edge at the
    lighter endpoint is marked (left on ties), unless that endpoint has no
    other edge, in which case nothing changes.
    """
    verts, order, pos = _layout(p)
    i = _position(pos, e_star, p)
    if card_left < 1 or card_right < 1:
        raise NotAdjacentSupernodes("supernode cardinalities must be positive")
    left_v, right_v = verts[i], verts[i + 1]
    w_star = p.weight(e_star)
    small = min(card_left, card_right)
    n = p.n - 2 + card_left + card_right

    deltas = {}
    if card_left <= card_right:
        if i > 0:
            deltas[order[i - 1]] = w_star
    elif i + 1 < len(order):
        deltas[order[i + 1]] = w_star

    mult = {left_v: card_left, right_v: card_right}
    return PathMergePlan(
        PathCase.SUPERNODE_PAIR,
        Redistribution(deltas),
        w_star * small * (n - card_left - card_right),
        mult,
    )


def el_table(weights: Sequence[Number], n_left: int) -> list[Fraction]:
    """Left-side error of a subpath merge for every prefix assignment.

    ``weights`` is ``w_0 .. w_{k+1}`` (left neighbour, the k subpath edges,
    right neighbour).  Entry ``i`` is the error between the ``n_left`` outer
    vertices and the subpath vertices when the left neighbour is reweighted
    to ``w_0 + ... + w_i``.
    """
    w = [to_fraction(x) for x in weights]
    k = len(w) - 2
    if k < 0:
        raise ValueError("need at least the two neighbour weights")
    table = []
    for i in range(k + 1):
        s = sum((j * w[j] for j in range(1, i + 1)), Fraction(0))
        s += sum(((k + 1 - j) * w[j] for j in range(i + 1, k + 1)), Fraction(0))
        table.append(n_left * s)
    return table


def merge_subpath(p: WeightedGraph, targets: Iterable[int]) -> PathMergePlan:
    """Contract a contiguous run of k edges into one supernode.

    The left neighbour absorbs the first ceil(k/2) subpath weights and the
    right neighbour the rest.  For odd k this is the split produced by padding
    the run with a zero-weight edge on its right.
    """
    verts, order, pos = _layout(p)
    targets = sorted(set(targets), key=lambda t: _position(pos, t, p))
    if not targets:
        raise ValidationError("no edges to contract")
    first, last = pos[targets[0]], pos[targets[-1]]
    k = len(targets)
    if last - first + 1 != k:
        raise NotContiguous("targets do not form a contiguous subpath")

    inner = [p.weight(t) for t in targets]
    has_left = first > 0
    has_right = last + 1 < len(order)
    w0 = p.weight(order[first - 1]) if has_left else Fraction(0)
    wk1 = p.weight(order[last + 1]) if has_right else Fraction(0)
    split = (k + 1) // 2

    deltas = {}
    if has_left:
        deltas[order[first - 1]] = sum(inner[:split], Fraction(0))
    if has_right:
        deltas[order[last + 1]] = sum(inner[split:], Fraction(0))

    n_left = first
    n_right = len(order) - last - 1
    weights = [w0, *inner, wk1]
    predicted = el_table(weights, n_left)[split] + el_table(weights[::-1], n_right)[k - split]
    return PathMergePlan(PathCase.SUBPATH, Redistribution(deltas), predicted)


def sequential_left_marking(
    p: WeightedGraph, targets: Iterable[int], order: Sequence[int] | None = None
) -> Redistribution:
    """Literal greedy pass: contract targets one by one, marking left.

    Each contracted edge adds its current weight to the nearest surviving
    edge on its left.  Accepts any target set, including subpaths.
    """
    _, path, pos = _layout(p)
    targets = list(dict.fromkeys(targets))
    for t in targets:
        _position(pos, t, p)
    if order is None:
        order = targets
    elif sorted(order) != sorted(targets):
        raise ValidationError("order must be a permutation of the targets")

    current = {e.id: e.weight for e in p.edges}
    alive = set(current)
    for t in order:
        for j in range(pos[t] - 1, -1, -1):
            if path[j] in alive:
                current[path[j]] += current[t]
                break
        alive.discard(t)
    return Redistribution({e: current[e] - p.weight(e) for e in alive})


def merge_independent(
    p: WeightedGraph, targets: Iterable[int], order: Sequence[int] | None = None
) -> PathMergePlan:
    """Contract a matching of path edges, marking each left neighbour.

    ``order`` fixes the processing order; the result does not depend on it.
    """
    _layout(p)
    targets = list(dict.fromkeys(targets))
    if not targets:
        raise ValidationError("no edges to contract")
    seen = set()
    for t in targets:
        e = p.edge(t)
        if e.u in seen or e.v in seen:
            raise NotAMatching("targets share an endpoint; use merge_subpath")
        seen.update(e.endpoints)
    redist = sequential_left_marking(p, targets, order)
    total = sum((p.weight(t) for t in targets), Fraction(0))
    return PathMergePlan(PathCase.INDEPENDENT_SET, redist, (p.n - 2 * len(targets)) * total)


def plan_for(p: WeightedGraph, req: ContractionRequest) -> PathMergePlan:
    """Dispatch a validated path request to its planner."""
    if req.mode is Mode.SINGLE_EDGE:
        (e,) = req.targets
        return merge_single_edge(p, e)
    if req.mode is Mode.INDEPENDENT_SET:
        return merge_independent(p, sorted(req.targets))
    if req.mode is Mode.SUBPATH:
        return merge_subpath(p, req.targets)
    raise ValidationError(f"mode {req.mode.value!r} is not a path mode")
