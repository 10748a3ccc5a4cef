from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import path_graph, paths
from weightmerge import (
    Disconnected,
    GraphKind,
    HasCycle,
    Mode,
    NegativeResultWeight,
    NegativeWeight,
    NoSuchEdge,
    NotAMatching,
    NotAPath,
    NotContiguous,
    ParseError,
    Redistribution,
    ValidationError,
    contract,
    derive_merged_sets,
    load_graph,
    make_request,
)


def test_load_small_path():
    g = load_graph("1 2 3.0\n2 3 4.0")
    assert g.kind is GraphKind.PATH
    assert g.n == 3
    assert [e.weight for e in g.edges] == [3, 4]


def test_load_star_is_tree():
    assert load_graph("1 2 1\n1 3 1\n1 4 1").kind is GraphKind.TREE


def test_load_triangle_names_line():
    with pytest.raises(HasCycle, match="line 3"):
        load_graph("1 2 1\n2 3 1\n3 1 1")


def test_load_rationals_and_comments():
    g = load_graph("# header\na b 1/3  # trailing\n\nb c 0.25\n")
    assert [e.weight for e in g.edges] == [Fraction(1, 3), Fraction(1, 4)]


@pytest.mark.parametrize(
    "text, exc, line",
    [
        ("1 2 -1", NegativeWeight, 1),
        ("1 2 1\n3 4 1", Disconnected, 2),
        ("1 2 x", ParseError, 1),
        ("1 2\n", ParseError, 1),
        ("1 1 2", HasCycle, 1),
        ("# nothing\n", ParseError, None),
    ],
)
def test_load_errors(text, exc, line):
    with pytest.raises(exc) as info:
        load_graph(text)
    assert info.value.line == line


def test_path_head_is_first_listed_endpoint():
    # edges listed middle-out: the head is the first end vertex seen
    g = load_graph("b c 1\na b 2\nc d 3")
    verts, eids = g.path_order()
    assert verts == ["a", "b", "c", "d"]
    assert eids == [1, 0, 2]


def test_path_order_rejects_tree():
    with pytest.raises(NotAPath):
        load_graph("1 2 1\n1 3 1\n1 4 1").path_order()


def test_mode_derivation():
    p = path_graph([1] * 6)
    assert make_request(p, [2]).mode is Mode.SINGLE_EDGE
    assert make_request(p, [0, 2]).mode is Mode.INDEPENDENT_SET
    assert make_request(p, [1, 2, 3]).mode is Mode.SUBPATH
    with pytest.raises(ValidationError):
        make_request(p, [0, 1, 3])
    star = load_graph("1 2 1\n1 3 1\n1 4 1")
    assert make_request(star, [0]).mode is Mode.TREE_SINGLE_EDGE
    with pytest.raises(NotAPath):
        make_request(star, [0, 1])


def test_mode_override_validation():
    p = path_graph([1] * 5)
    with pytest.raises(NotAMatching):
        make_request(p, [0, 1], "independent")
    with pytest.raises(NotContiguous):
        make_request(p, [0, 2], "subpath")
    with pytest.raises(NoSuchEdge):
        make_request(p, [9])
    assert make_request(p, [1], "subpath").mode is Mode.SUBPATH


def test_merged_sets_examples():
    p8 = path_graph([1] * 7, ["a1", "a2", "a3", "u1", "v1", "b1", "b2", "b3"])
    vm, rest = derive_merged_sets(p8, make_request(p8, [3]))
    assert vm == {"u1", "v1"} and len(rest) == 6

    p4 = path_graph([1, 1, 1])
    vm, rest = derive_merged_sets(p4, make_request(p4, [0, 1, 2]))
    assert len(vm) == 4 and not rest

    p6 = path_graph([1] * 5)
    vm, rest = derive_merged_sets(p6, make_request(p6, [0, 3]))
    assert len(vm) == 4 and len(rest) == 2


def test_contract_two_vertex_path():
    p = path_graph([5])
    cg = contract(p, make_request(p, [0]))
    assert cg.base.n == 1 and not cg.base.edges
    assert [s.cardinality for s in cg.supernodes] == [2]


def test_contract_marks_left_neighbour():
    p = path_graph([1, 2, 3, 7, 4])
    cg = contract(p, make_request(p, [3]), Redistribution({2: 7}))
    assert cg.base.weight(cg.edge_map[2]) == 10
    assert cg.node_of(3) == cg.node_of(4) == "3+4"


def test_contract_subpath_cardinality():
    p = path_graph([1] * 6)
    cg = contract(p, make_request(p, [1, 2, 3, 4]))
    assert [s.cardinality for s in cg.supernodes] == [5]


def test_contract_rejects_bad_redistributions():
    p = path_graph([1, 2, 3])
    req = make_request(p, [1])
    with pytest.raises(NegativeResultWeight):
        contract(p, req, Redistribution({0: -2}))
    with pytest.raises(ValidationError):
        contract(p, req, Redistribution({1: 1}))


@settings(max_examples=60, deadline=None)
@given(paths(min_edges=1), st.data())
def test_contraction_invariants(p, data):
    m = len(p.edges)
    starts = data.draw(st.sets(st.integers(0, m - 1), min_size=1))
    targets = {t for t in starts if t - 1 not in starts}  # spaced out: a matching
    req = make_request(p, targets)
    vm, rest = derive_merged_sets(p, req)
    assert len(vm) + len(rest) == p.n
    cg = contract(p, req)
    grouped = [m for s in cg.supernodes for m in s.members]
    untouched = [v for v in p.vertices if cg.node_of(v) == v]
    assert len(set(grouped)) == len(grouped)
    assert len(grouped) + len(untouched) == p.n
    assert cg.base.n == p.n - len(targets)
    assert cg.base.kind is GraphKind.PATH
    for e in p.edges:
        if e.id not in targets:
            assert cg.base.weight(cg.edge_map[e.id]) == e.weight
    assert set(cg.origin_map) == set(p.vertices)


def test_matching_allows_gap_edges():
    p = path_graph([1] * 5)
    # edges 0 and 2 share no endpoint; edge 1 between them survives
    assert make_request(p, [0, 2]).mode is Mode.INDEPENDENT_SET
