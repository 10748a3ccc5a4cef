"""Weighted paths and trees, supernodes, and edge contraction.

Weights are kept as :class:`fractions.Fraction` throughout, so every error
value computed downstream is exact.
"""

from __future__ import annotations

import enum
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import (
    Disconnected,
    HasCycle,
    NegativeResultWeight,
    NegativeWeight,
    NoSuchEdge,
    NotAMatching,
    NotAPath,
    NotATreeEdge,
    NotContiguous,
    ParseError,
    ValidationError,
)

Vertex = Hashable
Number = Union[int, Fraction, str, float]


def to_fraction(value: Number) -> Fraction:
    """Convert ``value`` exactly; floats go through their shortest repr."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


class GraphKind(enum.Enum):
    PATH = "path"
    TREE = "tree"


class Mode(enum.Enum):
    SINGLE_EDGE = "single"
    INDEPENDENT_SET = "independent"
    SUBPATH = "subpath"
    TREE_SINGLE_EDGE = "tree"


@dataclass(frozen=True)
class Edge:
    id: int
    u: Vertex
    v: Vertex
    weight: Fraction

    @property
    def endpoints(self) -> tuple[Vertex, Vertex]:
        return (self.u, self.v)

    def other(self, x: Vertex) -> Vertex:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"{x!r} is not an endpoint of edge {self.id}")


class WeightedGraph:
    """An immutable weighted tree (a path being the special case).

    Edge ids are positions in the input sequence.  Vertices keep their order
    of first appearance, which later fixes the left/right orientation.
    """

    def __init__(
        self,
        edges: Iterable[tuple[Vertex, Vertex, Number]],
        vertices: Iterable[Vertex] = (),
        *,
        lines: Iterable[int] | None = None,
    ):
        edges = list(edges)
        line_nos = list(lines) if lines is not None else [None] * len(edges)
        order: dict[Vertex, None] = dict.fromkeys(vertices)
        built: list[Edge] = []
        adj: dict[Vertex, list[int]] = {v: [] for v in order}
        parent: dict[Vertex, Vertex] = {}

        def find(x):
            root = x
            while parent.setdefault(root, root) != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        for i, ((u, v, w), line) in enumerate(zip(edges, line_nos)):
            w = to_fraction(w)
            if w < 0:
                raise NegativeWeight(f"negative weight {w} on edge {u}-{v}", line)
            if u == v:
                raise HasCycle(f"self-loop at {u}", line)
            ru, rv = find(u), find(v)
            if ru == rv:
                raise HasCycle(f"edge {u}-{v} closes a cycle", line)
            parent[ru] = rv
            for x in (u, v):
                order.setdefault(x, None)
                adj.setdefault(x, []).append(i)
            built.append(Edge(i, u, v, w))

        if not order:
            raise ValidationError("graph has no vertices")
        self._vertices = tuple(order)
        self._edges = tuple(built)
        self._adj = {v: tuple(ids) for v, ids in adj.items()}

        root = find(self._vertices[0])
        for e, line in zip(built, line_nos):
            if find(e.u) != root:
                raise Disconnected(f"edge {e.u}-{e.v} is not connected to {self._vertices[0]}", line)
        for v in self._vertices:
            if find(v) != root:
                raise Disconnected(f"vertex {v} is isolated")

        if all(len(ids) <= 2 for ids in self._adj.values()):
            self._kind = GraphKind.PATH
        else:
            self._kind = GraphKind.TREE

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def kind(self) -> GraphKind:
        return self._kind

    @property
    def n(self) -> int:
        return len(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: Vertex) -> bool:
        return v in self._adj

    def __repr__(self) -> str:
        return f"WeightedGraph({self._kind.value}, n={self.n}, m={len(self._edges)})"

    def edge(self, eid: int) -> Edge:
        if not isinstance(eid, int) or not 0 <= eid < len(self._edges):
            raise NoSuchEdge(f"no edge with id {eid!r}")
        return self._edges[eid]

    def weight(self, eid: int) -> Fraction:
        return self.edge(eid).weight

    def incident(self, v: Vertex) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])

    def neighbors(self, v: Vertex) -> list[Vertex]:
        return [self._edges[i].other(v) for i in self._adj[v]]

    def find_edge(self, a: Vertex, b: Vertex) -> int:
        for i in self._adj.get(a, ()):
            if self._edges[i].other(a) == b:
                return i
        raise NoSuchEdge(f"no edge between {a} and {b}")

    def with_weights(self, weights: Mapping[int, Number]) -> WeightedGraph:
        """Copy of the graph with some edge weights replaced (ids unchanged)."""
        return WeightedGraph(
            ((e.u, e.v, weights.get(e.id, e.weight)) for e in self._edges),
            self._vertices,
        )

    # -- traversal -------------------------------------------------------

    def distances_from(self, source: Vertex) -> dict[Vertex, Fraction]:
        dist = {source: Fraction(0)}
        stack = [source]
        while stack:
            x = stack.pop()
            for i in self._adj[x]:
                e = self._edges[i]
                y = e.other(x)
                if y not in dist:
                    dist[y] = dist[x] + e.weight
                    stack.append(y)
        return dist

    def all_pairs_distances(self) -> dict[Vertex, dict[Vertex, Fraction]]:
        return {v: self.distances_from(v) for v in self._vertices}

    def path_edges(self, a: Vertex, b: Vertex) -> list[int]:
        """Edge ids on the unique a-b path, ordered from a."""
        via: dict[Vertex, int | None] = {a: None}
        stack = [a]
        while stack and b not in via:
            x = stack.pop()
            for i in self._adj[x]:
                y = self._edges[i].other(x)
                if y not in via:
                    via[y] = i
                    stack.append(y)
        out = []
        x = b
        while via[x] is not None:
            i = via[x]
            out.append(i)
            x = self._edges[i].other(x)
        out.reverse()
        return out

    def path_order(self) -> tuple[list[Vertex], list[int]]:
        """Vertices and edge ids of a path, walked from its head.

        The head is the path end that appears first in vertex order.
        """
        if self._kind is not GraphKind.PATH:
            raise NotAPath("graph is not a path")
        ends = [v for v in self._vertices if len(self._adj[v]) <= 1]
        head = ends[0]
        verts, eids = [head], []
        prev = None
        x = head
        while True:
            nxt = [i for i in self._adj[x] if i != prev]
            if not nxt:
                break
            prev = nxt[0]
            eids.append(prev)
            x = self._edges[prev].other(x)
            verts.append(x)
        return verts, eids


# -- supernodes and requests --------------------------------------------------


@dataclass(frozen=True)
class Supernode:
    """A node of the contracted graph holding one or more original vertices."""

    members: tuple[Vertex, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("a supernode needs at least one member")

    @property
    def cardinality(self) -> int:
        return len(self.members)

    @property
    def label(self) -> str:
        return "+".join(str(m) for m in self.members)


@dataclass(frozen=True)
class ContractionRequest:
    targets: frozenset[int]
    mode: Mode


def _is_matching(g: WeightedGraph, targets: Iterable[int]) -> bool:
    seen: set[Vertex] = set()
    for eid in targets:
        e = g.edge(eid)
        if e.u in seen or e.v in seen:
            return False
        seen.update(e.endpoints)
    return True


def _is_contiguous(g: WeightedGraph, targets: frozenset[int]) -> bool:
    _, order = g.path_order()
    pos = sorted(order.index(t) for t in targets)
    return pos[-1] - pos[0] == len(pos) - 1


def make_request(
    g: WeightedGraph, targets: Iterable[int], mode: Mode | str | None = None
) -> ContractionRequest:
    """Validate ``targets`` against ``g`` and derive (or check) the mode.

    A lone edge resolves to ``SINGLE_EDGE`` on a path and ``TREE_SINGLE_EDGE``
    otherwise.  Several edges are only accepted on a path, as a matching or as
    one contiguous subpath.
    """
    targets = frozenset(targets)
    if not targets:
        raise ValidationError("no edges to contract")
    for t in targets:
        g.edge(t)
    if mode is not None:
        mode = Mode(mode)
    is_path = g.kind is GraphKind.PATH

    if mode is None:
        if len(targets) == 1:
            mode = Mode.SINGLE_EDGE if is_path else Mode.TREE_SINGLE_EDGE
        elif not is_path:
            raise NotAPath("contracting several tree edges is not supported")
        elif _is_matching(g, targets):
            mode = Mode.INDEPENDENT_SET
        elif _is_contiguous(g, targets):
            mode = Mode.SUBPATH
        else:
            raise ValidationError(
                "targets are neither a matching nor one contiguous subpath; "
                "split the request"
            )
        return ContractionRequest(targets, mode)

    if mode is Mode.TREE_SINGLE_EDGE:
        if len(targets) != 1:
            raise ValidationError("tree mode contracts exactly one edge")
    elif not is_path:
        raise NotAPath(f"mode {mode.value!r} requires a path")
    elif mode is Mode.SINGLE_EDGE:
        if len(targets) != 1:
            raise ValidationError("single mode contracts exactly one edge")
    elif mode is Mode.INDEPENDENT_SET:
        if not _is_matching(g, targets):
            raise NotAMatching("targets share an endpoint; use subpath mode")
    elif mode is Mode.SUBPATH:
        if not _is_contiguous(g, targets):
            raise NotContiguous("targets do not form a contiguous subpath")
    return ContractionRequest(targets, mode)


def derive_merged_sets(
    g: WeightedGraph, req: ContractionRequest
) -> tuple[frozenset, frozenset]:
    merged = set()
    for t in req.targets:
        merged.update(g.edge(t).endpoints)
    return frozenset(merged), frozenset(v for v in g.vertices if v not in merged)


# -- redistributions and contraction -----------------------------------------


@dataclass(frozen=True, eq=False)
class Redistribution:
    """Per-edge weight changes: new weight = old weight + delta."""

    deltas: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for eid, d in dict(self.deltas).items():
            d = to_fraction(d)
            if d != 0:
                clean[int(eid)] = d
        object.__setattr__(self, "deltas", clean)

    @classmethod
    def marking(cls, edges: Iterable[int], amount: Number) -> Redistribution:
        return cls({e: amount for e in edges})

    def get(self, eid: int) -> Fraction:
        return self.deltas.get(eid, Fraction(0))

    def items(self):
        return sorted(self.deltas.items())

    def __eq__(self, other):
        if not isinstance(other, Redistribution):
            return NotImplemented
        return self.deltas == other.deltas

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"Redistribution({{{body}}})"


@dataclass(frozen=True)
class ContractedGraph:
    base: WeightedGraph
    origin_map: dict
    supernodes: tuple[Supernode, ...]
    edge_map: dict[int, int]
    redistribution: Redistribution

    def node_of(self, v: Vertex) -> Vertex:
        return self.origin_map[v]


def contract(
    g: WeightedGraph, req: ContractionRequest, redist: Redistribution | None = None
) -> ContractedGraph:
    """Remove the target edges, fuse their endpoints and apply ``redist``."""
    redist = redist or Redistribution()
    for eid in redist.deltas:
        g.edge(eid)
        if eid in req.targets:
            raise ValidationError(f"edge {eid} is contracted and cannot be reweighted")

    group = {v: v for v in g.vertices}

    def find(x):
        while group[x] != x:
            group[x] = group[group[x]]
            x = group[x]
        return x

    for t in req.targets:
        e = g.edge(t)
        group[find(e.u)] = find(e.v)

    members: dict[Vertex, list[Vertex]] = {}
    for v in g.vertices:
        members.setdefault(find(v), []).append(v)

    supernodes = []
    label_of = {}
    for root, ms in members.items():
        if len(ms) > 1:
            sn = Supernode(tuple(ms))
            supernodes.append(sn)
            label_of[root] = sn.label
        else:
            label_of[root] = ms[0]
    origin = {v: label_of[find(v)] for v in g.vertices}

    new_edges = []
    edge_map = {}
    for e in g.edges:
        if e.id in req.targets:
            continue
        w = e.weight + redist.get(e.id)
        if w < 0:
            raise NegativeResultWeight(e.id, w)
        edge_map[e.id] = len(new_edges)
        new_edges.append((origin[e.u], origin[e.v], w))

    base = WeightedGraph(new_edges, dict.fromkeys(origin.values()))
    return ContractedGraph(base, origin, tuple(supernodes), edge_map, redist)


# -- tree topology around a single edge ---------------------------------------


def neighbor_subtrees(
    tree: WeightedGraph, e_star: int
) -> tuple[Vertex, Vertex, list[tuple[int, int]], list[tuple[int, int]]]:
    """Split the neighbours of ``e_star`` into left and right.

    Returns ``(v1, v2, left, right)`` where ``v1`` is the first-listed
    endpoint and ``left``/``right`` hold ``(edge id, subtree size)`` for the
    edges at ``v1``/``v2`` in adjacency order.
    """
    try:
        e = tree.edge(e_star)
    except NoSuchEdge as exc:
        raise NotATreeEdge(str(exc)) from None
    v1, v2 = e.u, e.v
    blocked = {v1, v2}

    def size_beyond(start: Vertex) -> int:
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in tree.neighbors(x):
                if y not in seen and y not in blocked:
                    seen.add(y)
                    stack.append(y)
        return len(seen)

    sides = []
    for end in (v1, v2):
        side = []
        for i in tree.incident(end):
            if i != e_star:
                side.append((i, size_beyond(tree.edge(i).other(end))))
        sides.append(side)
    return v1, v2, sides[0], sides[1]


# -- text input ---------------------------------------------------------------


def parse_weight(token: str, line: int | None = None) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {token!r}", line) from None


def load_graph(text: str) -> WeightedGraph:
    """Parse a whitespace-separated ``u v w`` edge list.

    ``#`` starts a comment; weights may be decimals or ``p/q`` rationals.
    """
    edges = []
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'u v weight', got {body!r}", no)
        u, v, w = parts
        edges.append((u, v, parse_weight(w, no)))
        lines.append(no)
    if not edges:
        raise ParseError("edge list is empty")
    return WeightedGraph(edges, lines=lines)
