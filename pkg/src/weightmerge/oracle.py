"""Brute-force checks for the closed-form planners.

Three independent searches: exhaustive enumeration of tree markings, a grid
over new weights of chosen path edges, and random redistributions.  Each one
reports the best value it found against a claimed optimum; a search can only
fail to beat the claim, it never proves optimality over the continuum.

Grid and sampling runs evaluate the error as a sum of terms
``count * |c + sum(x_e)|`` over vertex pairs, where ``x_e`` are the weight
changes of the edges on the pair's path in the contracted graph.  All terms
are scaled to integers so numpy can evaluate them exactly.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import TooLarge, ValidationError
from .graph import (
    ContractionRequest,
    GraphKind,
    Mode,
    Number,
    Redistribution,
    WeightedGraph,
    contract,
    derive_merged_sets,
    to_fraction,
)
from .trees import Marking, optimal_marking, plan_tree, profile

MAX_GRID_CELLS = 10**8
MAX_MARKING_EDGES = 20


@dataclass(frozen=True)
class GridSpec:
    """Per-edge weight ranges ``[lo, hi]`` explored at a fixed step."""

    step: Fraction
    ranges: Mapping[int, tuple[Fraction, Fraction]]

    def __post_init__(self):
        step = to_fraction(self.step)
        if step <= 0:
            raise ValidationError("grid step must be positive")
        ranges = {}
        for eid, (lo, hi) in dict(self.ranges).items():
            lo, hi = to_fraction(lo), to_fraction(hi)
            if lo < 0 or hi < lo:
                raise ValidationError(f"bad grid range [{lo}, {hi}] for edge {eid}")
            if ((hi - lo) / step).denominator != 1:
                raise ValidationError(f"step {step} does not divide [{lo}, {hi}]")
            ranges[int(eid)] = (lo, hi)
        object.__setattr__(self, "step", step)
        object.__setattr__(self, "ranges", ranges)

    def points(self, eid: int) -> int:
        lo, hi = self.ranges[eid]
        return int((hi - lo) / self.step) + 1

    @property
    def cells(self) -> int:
        return math.prod(self.points(e) for e in self.ranges)

    @classmethod
    def default(
        cls,
        g: WeightedGraph,
        req: ContractionRequest,
        step: Number,
        edges: Iterable[int] | None = None,
    ) -> GridSpec:
        """Ranges ``[0, span]`` where span covers the edge and the merged runs next to it.

        Outside that window the error only grows, so nothing is lost by
        clipping the search there.  ``hi`` is rounded up to a step multiple.
        """
        step = to_fraction(step)
        if edges is None:
            edges = varied_edges(g, req)
        ranges = {}
        for e in edges:
            span = _span(g, req, e)
            hi = math.ceil(span / step) * step
            ranges[e] = (Fraction(0), Fraction(hi))
        return cls(step, ranges)


def varied_edges(g: WeightedGraph, req: ContractionRequest) -> list[int]:
    """Surviving edges that touch a merged vertex."""
    merged, _ = derive_merged_sets(g, req)
    return sorted(
        e.id for e in g.edges
        if e.id not in req.targets and (e.u in merged or e.v in merged)
    )


def _span(g: WeightedGraph, req: ContractionRequest, eid: int) -> Fraction:
    if g.kind is not GraphKind.PATH:
        return sum((e.weight for e in g.edges), Fraction(0))
    _, order = g.path_order()
    i = order.index(eid)
    total = g.weight(eid)
    for direction in (-1, 1):
        j = i + direction
        crossed = False
        while 0 <= j < len(order) and order[j] in req.targets:
            total += g.weight(order[j])
            crossed = True
            j += direction
        if crossed and 0 <= j < len(order):
            total += g.weight(order[j])
    return total


@dataclass(frozen=True)
class OracleVerdict:
    best_value: Fraction
    best_witness: object
    claimed_value: Fraction
    confirmed: bool
    evaluated: int = 0

    @property
    def gap(self) -> Fraction:
        return self.claimed_value - self.best_value

    @property
    def verdict(self) -> str:
        return "Confirmed" if self.confirmed else f"Refuted(gap={self.gap})"


def _verdict(best, witness, claimed, evaluated) -> OracleVerdict:
    claimed = to_fraction(claimed)
    return OracleVerdict(best, witness, claimed, best >= claimed, evaluated)


# -- affine pair model --------------------------------------------------------


class AffineErrorModel:
    """Error as a function of extra weight changes on ``free`` edges.

    ``part`` selects which pairs count: ``"total"`` (every pair with an
    unmerged endpoint) or ``"outside"`` (both endpoints unmerged).
    """

    def __init__(
        self,
        g: WeightedGraph,
        req: ContractionRequest,
        free: Iterable[int],
        *,
        base: Redistribution | None = None,
        multiplicity: Mapping | None = None,
        part: str = "total",
        denominators: Iterable[int] = (),
    ):
        if part not in ("total", "outside"):
            raise ValueError("part must be 'total' or 'outside'")
        self.free = sorted(set(free))
        for e in self.free:
            if e in req.targets:
                raise ValidationError(f"edge {e} is contracted and cannot vary")
        self.base = base or Redistribution()
        cg = contract(g, req, self.base)
        merged, _ = derive_merged_sets(g, req)
        mult = multiplicity or {}
        col = {cg.edge_map[e]: k for k, e in enumerate(self.free)}
        width = len(self.free)

        # distance and free-edge usage from every contracted node
        reach = {}
        h = cg.base
        for src in h.vertices:
            info = {src: (Fraction(0), (0,) * width)}
            stack = [src]
            while stack:
                x = stack.pop()
                dx, cx = info[x]
                for i in h.incident(x):
                    e = h.edge(i)
                    y = e.other(x)
                    if y in info:
                        continue
                    cy = cx
                    if i in col:
                        cy = cx[:col[i]] + (1,) + cx[col[i] + 1:]
                    info[y] = (dx + e.weight, cy)
                    stack.append(y)
            reach[src] = info

        terms: dict[tuple[Fraction, tuple[int, ...]], int] = {}
        verts = g.vertices
        for i, u in enumerate(verts):
            d_old = g.distances_from(u)
            for v in verts[i + 1:]:
                u_in, v_in = u in merged, v in merged
                if u_in and v_in:
                    continue
                if part == "outside" and (u_in or v_in):
                    continue
                dist, coef = reach[cg.origin_map[u]][cg.origin_map[v]]
                key = (dist - d_old[v], coef)
                terms[key] = terms.get(key, 0) + mult.get(u, 1) * mult.get(v, 1)

        dens = [c.denominator for c, _ in terms] + [int(d) for d in denominators]
        dens += [g.weight(e).denominator for e in self.free]
        dens += [d.denominator for _, d in self.base.items()]
        self.scale = math.lcm(1, *dens)
        keys = list(terms)
        self.consts = np.array([int(c * self.scale) for c, _ in keys], dtype=np.int64)
        self.coefs = np.array([cf for _, cf in keys], dtype=np.int64).reshape(len(keys), width)
        self.counts = np.array([terms[k] for k in keys], dtype=np.int64)

    def evaluate(self, deltas: np.ndarray) -> np.ndarray:
        """Scaled errors for rows of scaled extra deltas (shape ``(S, F)``)."""
        deltas = np.asarray(deltas, dtype=np.int64)
        if deltas.ndim == 1:
            deltas = deltas[None, :]
        inner = self.consts[None, :] + deltas @ self.coefs.T
        return np.abs(inner) @ self.counts

    def grid_minimum(
        self, starts: list[int], stride: int, sizes: list[int], chunk: int = 1 << 22
    ) -> tuple[int, tuple[int, ...]]:
        """Smallest scaled error over the lattice ``starts[k] + stride * i_k``.

        Terms are grouped by which axes they sum.  Each group is tabulated
        once along the 1-D lattice of possible sums and then gathered with
        broadcast index sums, so the cost per cell is one lookup per group.
        Returns the value and the lexicographically first minimising index.
        """
        groups: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for c, cf, n in zip(self.consts.tolist(), self.coefs.tolist(), self.counts.tolist()):
            used = tuple(k for k, u in enumerate(cf) if u)
            groups.setdefault(used, []).append((c, n))
        fixed = 0
        tables = []
        for used, items in groups.items():
            consts = np.array([c for c, _ in items], dtype=np.int64)
            counts = np.array([n for _, n in items], dtype=np.int64)
            if not used:
                fixed += int(np.abs(consts) @ counts)
                continue
            span = sum(sizes[k] - 1 for k in used)
            sums = sum(starts[k] for k in used) + stride * np.arange(span + 1, dtype=np.int64)
            tables.append((used, np.abs(consts[:, None] + sums[None, :]).T @ counts))
        if not sizes:
            return fixed, ()

        dims = len(sizes)
        row_cells = max(1, int(np.prod(sizes[1:], dtype=np.int64)))
        rows = max(1, chunk // row_cells)
        best, best_idx = None, None
        for r0 in range(0, sizes[0], rows):
            r1 = min(sizes[0], r0 + rows)
            shape = (r1 - r0, *sizes[1:])
            acc = np.full(shape, fixed, dtype=np.int64)
            for used, table in tables:
                idx = 0
                for k in used:
                    view = [1] * dims
                    view[k] = shape[k]
                    axis = np.arange(r0, r1) if k == 0 else np.arange(sizes[k])
                    idx = idx + axis.reshape(view)
                acc += table[idx]
            flat = int(np.argmin(acc))
            value = int(acc.reshape(-1)[flat])
            if best is None or value < best:
                local = np.unravel_index(flat, shape)
                best, best_idx = value, (int(local[0]) + r0, *map(int, local[1:]))
        return best, best_idx


# -- oracles ------------------------------------------------------------------


def _claimed_default(g: WeightedGraph, req: ContractionRequest, part: str) -> Fraction:
    if req.mode is Mode.TREE_SINGLE_EDGE or (part == "outside" and len(req.targets) == 1):
        (e,) = req.targets
        plan = plan_tree(g, e)
        if part == "outside":
            return plan.unit_count * g.weight(e)
        return plan.predicted_error
    from .paths import plan_for

    if part != "total":
        raise ValidationError("path plans only predict the total error")
    return plan_for(g, req).predicted_error


def grid_search_path(
    p: WeightedGraph,
    req: ContractionRequest,
    spec: GridSpec,
    edges_to_vary: Iterable[int] | None = None,
    *,
    claimed: Number | None = None,
    base: Redistribution | None = None,
    multiplicity: Mapping | None = None,
    max_cells: int = MAX_GRID_CELLS,
) -> OracleVerdict:
    """Evaluate the error at every grid point of new weights for the varied edges.

    Edges not varied keep their weight plus ``base``.  The witness is the
    lexicographically first minimiser, as a full redistribution.
    """
    edges = sorted(spec.ranges if edges_to_vary is None else set(edges_to_vary))
    missing = [e for e in edges if e not in spec.ranges]
    if missing:
        raise ValidationError(f"no grid range for edges {missing}")
    cells = math.prod(spec.points(e) for e in edges)
    if cells > max_cells:
        raise TooLarge(f"grid has {cells} cells, cap is {max_cells}")
    if claimed is None:
        claimed = _claimed_default(p, req, "total")
    base = Redistribution({e: d for e, d in (base or Redistribution()).items() if e not in edges})

    model = AffineErrorModel(
        p, req, edges, base=base, multiplicity=multiplicity,
        denominators=[spec.step.denominator] + [spec.ranges[e][0].denominator for e in edges],
    )
    D = model.scale
    stride = int(spec.step * D)
    starts = [int((spec.ranges[e][0] - p.weight(e)) * D) for e in edges]
    value, idx = model.grid_minimum(starts, stride, [spec.points(e) for e in edges])
    best = Fraction(value, D)
    deltas = dict(base.deltas)
    for e, start, i in zip(edges, starts, idx):
        deltas[e] = Fraction(start + stride * i, D)
    return _verdict(best, Redistribution(deltas), claimed, cells)


def sample_redistributions(
    g: WeightedGraph,
    req: ContractionRequest,
    n_samples: int,
    rng_seed: int,
    *,
    claimed: Number | None = None,
    edges: Iterable[int] | None = None,
    fractional: bool = False,
    part: str = "total",
    inject: Iterable[Redistribution] = (),
    multiplicity: Mapping | None = None,
    denominator: int = 1024,
) -> OracleVerdict:
    """Random probes of the redistribution space.

    Default mode perturbs a random subset of the surviving edges by amounts
    drawn uniformly from ``[-w_max, w_max]`` on a ``1/denominator`` lattice,
    clipped so no weight goes negative.  With ``fractional=True`` the
    neighbour edges of a single contracted edge each get ``c * w*`` with
    ``c`` uniform on ``{0, 1/denominator, ..., 1}``.  Redistributions in
    ``inject`` are evaluated first.
    """
    if n_samples < 1 and not list(inject):
        raise ValidationError("need at least one sample")
    inject = list(inject)
    if fractional:
        if len(req.targets) != 1:
            raise ValidationError("fractional sampling needs a single contracted edge")
        (e_star,) = req.targets
        free = profile(g, e_star).edges if edges is None else sorted(set(edges))
        amp = g.weight(e_star)
    else:
        free = sorted(e.id for e in g.edges if e.id not in req.targets) if edges is None else sorted(set(edges))
        amp = max((e.weight for e in g.edges), default=Fraction(0))
    if claimed is None:
        claimed = _claimed_default(g, req, part)

    inj_dens = [d.denominator for r in inject for _, d in r.items()]
    model = AffineErrorModel(
        g, req, free, multiplicity=multiplicity, part=part,
        denominators=[denominator * amp.denominator, *inj_dens],
    )
    D = model.scale
    unit = int(amp * D / denominator)
    rng = np.random.default_rng(rng_seed)
    F = len(free)
    if fractional:
        deltas = rng.integers(0, denominator + 1, size=(n_samples, F)) * unit
    else:
        steps = rng.integers(-denominator, denominator + 1, size=(n_samples, F))
        chosen = rng.random((n_samples, F)) < 0.5
        floor = np.array([-int(g.weight(e) * D) for e in free], dtype=np.int64)
        deltas = np.maximum(steps * unit * chosen, floor[None, :])
    rows = [[int(r.get(e) * D) for e in free] for r in inject]
    for r in inject:
        stray = set(r.deltas) - set(free)
        if stray:
            raise ValidationError(f"injected redistribution touches fixed edges {sorted(stray)}")
    if rows:
        deltas = np.vstack([np.array(rows, dtype=np.int64).reshape(-1, F), deltas])
    values = model.evaluate(deltas)
    i = int(np.argmin(values))
    best = Fraction(int(values[i]), D)
    witness = Redistribution({e: Fraction(int(deltas[i, k]), D) for k, e in enumerate(free)})
    return _verdict(best, witness, claimed, len(values))


def marking_error_table(tree: WeightedGraph, e_star: int, max_edges: int = MAX_MARKING_EDGES):
    """Unit error of every integral marking, enumerated as bit masks.

    Returns ``(profile, marks, errors)`` where row ``i`` of the boolean
    ``marks`` matrix holds bit ``j`` of ``i`` for neighbour edge ``j``.
    """
    prof = profile(tree, e_star)
    m = len(prof.edges)
    if m > min(max_edges, MAX_MARKING_EDGES):
        raise TooLarge(f"{m} neighbour edges exceed the enumeration cap")
    sizes = [s for _, s in prof.left] + [s for _, s in prof.right]
    is_left = [True] * len(prof.left) + [False] * len(prof.right)
    masks = np.arange(1 << m, dtype=np.int64)
    marks = ((masks[:, None] >> np.arange(m)) & 1).astype(np.int64)
    errors = np.zeros(1 << m, dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            a, b = marks[:, i], marks[:, j]
            if is_left[i] == is_left[j]:
                coef = a + b
            else:
                coef = (a == b).astype(np.int64)
            errors += sizes[i] * sizes[j] * coef
    return prof, marks.astype(bool), errors


def enumerate_markings(
    tree: WeightedGraph, e_star: int, max_edges: int = MAX_MARKING_EDGES
) -> OracleVerdict:
    """Exhaustive minimum over all neighbour subsets vs the fast algorithm."""
    prof, marks, errors = marking_error_table(tree, e_star, max_edges)
    i = int(np.argmin(errors))
    witness = Marking.of(prof, (e for e, on in zip(prof.edges, marks[i]) if on))
    claimed = optimal_marking(tree, e_star).unit_count
    return _verdict(Fraction(int(errors[i])), witness, claimed, len(errors))
