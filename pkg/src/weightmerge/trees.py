"""Optimal marking of neighbour edges when one tree edge is contracted.

A marked neighbour edge absorbs the contracted weight w*.  Errors here are
counted in units of w* over pairs of unmerged vertices; the pairs touching
the merged endpoints always add exactly (n - 2) units for integral markings.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import ValidationError, WrongState
from .graph import Redistribution, WeightedGraph, neighbor_subtrees, to_fraction


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class NeighborProfile:
    """Sizes of the subtrees hanging off each side of the contracted edge."""

    e_star: int
    v1: object
    v2: object
    left: tuple[tuple[int, int], ...]
    right: tuple[tuple[int, int], ...]

    @property
    def S_L(self) -> int:
        return sum(size for _, size in self.left)

    @property
    def S_R(self) -> int:
        return sum(size for _, size in self.right)

    @property
    def n_left_edges(self) -> int:
        return len(self.left)

    @property
    def n_right_edges(self) -> int:
        return len(self.right)

    @property
    def edges(self) -> list[int]:
        return [eid for eid, _ in self.left] + [eid for eid, _ in self.right]

    def side_of(self, eid: int) -> Side:
        if any(e == eid for e, _ in self.left):
            return Side.LEFT
        if any(e == eid for e, _ in self.right):
            return Side.RIGHT
        raise ValidationError(f"edge {eid} is not a neighbour of edge {self.e_star}")

    def size_of(self, eid: int) -> int:
        for e, size in self.left + self.right:
            if e == eid:
                return size
        raise ValidationError(f"edge {eid} is not a neighbour of edge {self.e_star}")


@dataclass(frozen=True, eq=False)
class Marking:
    """Mark value per neighbour edge: 0, 1, or a fraction strictly between."""

    state: Mapping[int, Fraction]

    def __post_init__(self):
        clean = {}
        for eid, c in dict(self.state).items():
            c = to_fraction(c)
            if not 0 <= c <= 1:
                raise ValueError(f"mark value {c} outside [0, 1]")
            clean[int(eid)] = c
        object.__setattr__(self, "state", clean)

    @classmethod
    def of(cls, profile: NeighborProfile, marked: Iterable[int] = ()) -> Marking:
        marked = set(marked)
        unknown = marked - set(profile.edges)
        if unknown:
            raise ValidationError(f"edges {sorted(unknown)} are not neighbours")
        return cls({e: int(e in marked) for e in profile.edges})

    @property
    def is_integral(self) -> bool:
        return all(c in (0, 1) for c in self.state.values())

    @property
    def marked(self) -> frozenset[int]:
        return frozenset(e for e, c in self.state.items() if c == 1)

    def value(self, eid: int) -> Fraction:
        return self.state.get(eid, Fraction(0))

    def sums(self, profile: NeighborProfile) -> tuple[int, int, int, int]:
        """(S_LM, S_LU, S_RM, S_RU) for an integral marking."""
        if not self.is_integral:
            raise WrongState("side sums are defined for integral markings only")
        slm = sum(size for e, size in profile.left if self.value(e) == 1)
        srm = sum(size for e, size in profile.right if self.value(e) == 1)
        return slm, profile.S_L - slm, srm, profile.S_R - srm

    def __eq__(self, other):
        if not isinstance(other, Marking):
            return NotImplemented
        keys = set(self.state) | set(other.state)
        return all(self.value(k) == other.value(k) for k in keys)

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.state.items() if v))

    def __repr__(self):
        return f"Marking(marked={sorted(self.marked)})" if self.is_integral else f"Marking({self.state})"


def profile(tree: WeightedGraph, e_star: int) -> NeighborProfile:
    v1, v2, left, right = neighbor_subtrees(tree, e_star)
    return NeighborProfile(e_star, v1, v2, tuple(left), tuple(right))


# -- single-edge moves --------------------------------------------------------


class OpKind(enum.Enum):
    MARK_LEFT = ("mark", Side.LEFT)
    UNMARK_LEFT = ("unmark", Side.LEFT)
    MARK_RIGHT = ("mark", Side.RIGHT)
    UNMARK_RIGHT = ("unmark", Side.RIGHT)


class MarkOp(NamedTuple):
    kind: OpKind
    index: int  # position within the side's edge list

    def edge(self, prof: NeighborProfile) -> tuple[int, int]:
        side = prof.left if self.kind.value[1] is Side.LEFT else prof.right
        return side[self.index]


def mark_left(i: int) -> MarkOp:
    return MarkOp(OpKind.MARK_LEFT, i)


def unmark_left(i: int) -> MarkOp:
    return MarkOp(OpKind.UNMARK_LEFT, i)


def mark_right(i: int) -> MarkOp:
    return MarkOp(OpKind.MARK_RIGHT, i)


def unmark_right(i: int) -> MarkOp:
    return MarkOp(OpKind.UNMARK_RIGHT, i)


def marking_delta(prof: NeighborProfile, m: Marking, op: MarkOp) -> int:
    """Change in unit error caused by flipping one edge, in closed form."""
    eid, size = op.edge(prof)
    action, side = op.kind.value
    currently = m.value(eid)
    if currently not in (0, 1):
        raise WrongState(f"edge {eid} is fractionally marked")
    if (action == "mark") == (currently == 1):
        raise WrongState(f"edge {eid} is already {'marked' if currently else 'unmarked'}")
    slm, slu, srm, sru = m.sums(prof)
    if op.kind is OpKind.UNMARK_RIGHT:
        return size * (-(srm - size) - sru - slm + slu)
    if op.kind is OpKind.UNMARK_LEFT:
        return size * (-(slm - size) - slu - srm + sru)
    if op.kind is OpKind.MARK_LEFT:
        return size * (slm + (slu - size) + srm - sru)
    return size * (srm + (sru - size) + slm - slu)


def apply_op(prof: NeighborProfile, m: Marking, op: MarkOp) -> Marking:
    eid, _ = op.edge(prof)
    state = dict(m.state)
    state[eid] = 1 if op.kind.value[0] == "mark" else 0
    return Marking(state)


# -- optimal marking ------------------------------------------------------------------


def optimal_partial(prof: NeighborProfile, side: Side | str) -> Marking:
    """Best marking restricted to one side: mark edge i iff S_own - S_other <= size_i."""
    side = Side(side)
    if side is Side.LEFT:
        gap, edges = prof.S_L - prof.S_R, prof.left
    else:
        gap, edges = prof.S_R - prof.S_L, prof.right
    return Marking.of(prof, (eid for eid, size in edges if gap <= size))


def partial_units(prof: NeighborProfile, m: Marking) -> int:
    """Unit error of a one-sided integral marking in O(number of neighbours).

    Starting from the empty marking (S_L * S_R units), marking a left edge of
    size s changes the error by s * (S_L - S_R - s) whatever else is marked
    on that side; the right side is symmetric.
    """
    slm, _, srm, _ = m.sums(prof)
    if slm and srm:
        raise ValidationError("marking has marks on both sides")
    units = prof.S_L * prof.S_R
    for eid, size in prof.left:
        if m.value(eid) == 1:
            units += size * (prof.S_L - prof.S_R - size)
    for eid, size in prof.right:
        if m.value(eid) == 1:
            units += size * (prof.S_R - prof.S_L - size)
    return units


class TreeMarkingResult(NamedTuple):
    marking: Marking
    unit_count: int


def optimal_marking(tree: WeightedGraph, e_star: int) -> TreeMarkingResult:
    """Best of the two optimal one-sided markings (left wins ties).  O(|V|)."""
    plan = plan_tree(tree, e_star)
    return TreeMarkingResult(plan.marking, plan.unit_count)


def marking_redistribution(tree: WeightedGraph, e_star: int, m: Marking) -> Redistribution:
    """Weight changes realising ``m``: each neighbour gets c_i * w*."""
    w_star = tree.weight(e_star)
    return Redistribution({eid: c * w_star for eid, c in m.state.items()})


@dataclass(frozen=True)
class TreeMarkingPlan:
    profile: NeighborProfile
    marking: Marking
    unit_count: int
    left_partial: Marking
    left_units: int
    right_partial: Marking
    right_units: int
    redistribution: Redistribution
    predicted_error: Fraction


def plan_tree(tree: WeightedGraph, e_star: int) -> TreeMarkingPlan:
    """Full report-ready plan: both partials, the winner and its total error."""
    prof = profile(tree, e_star)
    left = optimal_partial(prof, Side.LEFT)
    right = optimal_partial(prof, Side.RIGHT)
    el, er = partial_units(prof, left), partial_units(prof, right)
    best, units = (left, el) if el <= er else (right, er)
    w_star = tree.weight(e_star)
    return TreeMarkingPlan(
        prof, best, units, left, el, right, er,
        marking_redistribution(tree, e_star, best),
        (units + tree.n - 2) * w_star,
    )

