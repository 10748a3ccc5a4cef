"""Exact distance-distortion error of a contraction.

The error sums ``|d_G(u, v) - d_G'(u, v)|`` over unordered pairs with at
least one endpoint outside the merged vertex set.  A merged vertex sits at
its supernode in ``G'`` but still contributes one term per original member.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError, WrongState
from .graph import (
    ContractionRequest,
    Number,
    Redistribution,
    WeightedGraph,
    contract,
    derive_merged_sets,
    neighbor_subtrees,
    to_fraction,
)

__all__ = [
    "ErrorReport",
    "Redistribution",
    "abs_pair_bound_check",
    "marking_unit_error",
    "total_error",
]


@dataclass(frozen=True)
class ErrorReport:
    total: Fraction
    outside_pairs: Fraction
    cross_pairs: Fraction
    unit_count: int | None = None


def total_error(
    g: WeightedGraph,
    req: ContractionRequest,
    redist: Redistribution | None = None,
    *,
    multiplicity: Mapping | None = None,
) -> ErrorReport:
    """Evaluate the contraction error by brute-force pair enumeration.

    ``multiplicity`` lets a vertex of ``g`` stand for several original
    vertices (an existing supernode): each pair term is weighted by the
    product of the two multiplicities.
    """
    cg = contract(g, req, redist)
    merged, _ = derive_merged_sets(g, req)
    mult = multiplicity or {}

    d_old = g.all_pairs_distances()
    d_new = cg.base.all_pairs_distances()
    node = cg.origin_map

    outside = Fraction(0)
    cross = Fraction(0)
    verts = g.vertices
    for i, u in enumerate(verts):
        du_old = d_old[u]
        du_new = d_new[node[u]]
        mu = mult.get(u, 1)
        for v in verts[i + 1:]:
            u_in, v_in = u in merged, v in merged
            if u_in and v_in:
                continue
            diff = abs(du_old[v] - du_new[node[v]]) * (mu * mult.get(v, 1))
            if u_in or v_in:
                cross += diff
            else:
                outside += diff
    return ErrorReport(outside + cross, outside, cross)


def _integral_state(value) -> bool:
    value = to_fraction(value)
    if value == 0:
        return False
    if value == 1:
        return True
    raise WrongState(f"marking value {value} is not integral")


def marking_unit_error(tree: WeightedGraph, e_star: int, m: Mapping[int, Number]) -> int:
    """Error among unmerged vertices for an integral marking, in units of w*.

    Each pair of neighbour subtrees contributes ``size_i * size_j`` times:
    2 for two marked edges on one side, 1 for marked/unmarked on one side,
    1 for marked/marked or unmarked/unmarked across sides, 0 otherwise.
    Edges missing from ``m`` count as unmarked.
    """
    _, _, left, right = neighbor_subtrees(tree, e_star)
    state = getattr(m, "state", m)
    known = {eid for eid, _ in left} | {eid for eid, _ in right}
    extra = set(state) - known
    if extra:
        raise ValidationError(f"edges {sorted(extra)} are not neighbours of edge {e_star}")

    entries = [("L", size, _integral_state(state.get(eid, 0))) for eid, size in left]
    entries += [("R", size, _integral_state(state.get(eid, 0))) for eid, size in right]
    units = 0
    for i, (side_a, size_a, mark_a) in enumerate(entries):
        for side_b, size_b, mark_b in entries[i + 1:]:
            if side_a == side_b:
                coef = int(mark_a) + int(mark_b)
            else:
                coef = 1 if mark_a == mark_b else 0
            units += coef * size_a * size_b
    return units


def abs_pair_bound_check(A, B, C, x, y):
    """Return ``(|x-A| + |x-A-B|, |y-C| + |y-B-C|)``."""
    return abs(x - A) + abs(x - A - B), abs(y - C) + abs(y - B - C)
