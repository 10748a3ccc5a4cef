from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import lopsided_tree, path_graph, paths, random_split_tree, split_trees
from weightmerge import (
    Redistribution,
    ValidationError,
    WeightedGraph,
    WrongState,
    abs_pair_bound_check,
    make_request,
    marking_unit_error,
    neighbor_subtrees,
    total_error,
)
from weightmerge.trees import Marking, marking_redistribution, profile


def test_cross_pair_contributes_w_star():
    labels = ["a1", "a2", "a3", "u1", "v1", "b1", "b2", "b3"]
    p = path_graph([1, 2, 3, 5, 1, 2, 3], labels)
    req = make_request(p, [3])
    cg_report = total_error(p, req, Redistribution({2: 5}))
    # a1 to u1: was 1+2+3, now 1+2+(3+5) to the supernode
    single = path_graph([1, 2, 3 + 5], ["a1", "a2", "a3", "s"])
    assert single.distances_from("a1")["s"] - p.distances_from("a1")["u1"] == 5
    assert cg_report.total == (8 - 2) * 5


def test_p5_middle_edge():
    p = path_graph([2, 3, 4, 1])
    report = total_error(p, make_request(p, [2]), Redistribution({1: 4}))
    assert report.total == 12
    assert report.total == report.outside_pairs + report.cross_pairs


def test_zero_weight_edge_costs_nothing():
    p = path_graph([2, 0, 4, 1])
    assert total_error(p, make_request(p, [1])).total == 0


def test_multiplicity_weights_pairs():
    p = path_graph([1, 1, 1])
    req = make_request(p, [1])
    plain = total_error(p, req)
    heavy = total_error(p, req, multiplicity={0: 3})
    # only the pair (0, 3) and the cross pairs of vertex 0 involve vertex 0
    assert heavy.total > plain.total
    assert heavy.total == 3 * total_error(p, req).total - 2 * total_error(
        p, req, multiplicity={0: 0}
    ).total


def test_lopsided_marking_errors():
    tree, e = lopsided_tree()
    _, _, left, right = neighbor_subtrees(tree, e)
    assert [s for _, s in left] == [2, 2, 3]
    assert [s for _, s in right] == [20, 1]
    big = right[0][0]
    assert marking_unit_error(tree, e, {eid: 1 for eid, _ in left}) == 32
    assert marking_unit_error(tree, e, {eid: 1 for eid, _ in right}) == 40
    assert marking_unit_error(tree, e, {big: 1}) == 27


def test_unit_error_rejects_bad_markings():
    tree, e = lopsided_tree()
    with pytest.raises(ValidationError):
        marking_unit_error(tree, e, {e: 1})
    _, _, left, _ = neighbor_subtrees(tree, e)
    with pytest.raises(WrongState):
        marking_unit_error(tree, e, {left[0][0]: Fraction(1, 2)})


def test_abs_pair_examples():
    assert abs_pair_bound_check(0, 5, 0, 2, 3) == (5, 5)
    assert abs_pair_bound_check(1, 2, 0, 0, 0) == (4, 2)
    assert abs_pair_bound_check(3, 0, 1, 3, 7)[0] == 0


@given(
    st.fractions(-20, 20, max_denominator=16),
    st.fractions(0, 20, max_denominator=16),
    st.fractions(-20, 20, max_denominator=16),
    st.fractions(-40, 40, max_denominator=16),
    st.fractions(-40, 40, max_denominator=16),
)
def test_abs_pair_bound(a, b, c, x, y):
    a1, a2 = abs_pair_bound_check(a, b, c, x, y)
    assert a1 >= b and a2 >= b
    if a <= x <= a + b:
        assert a1 == b
    if c <= y <= b + c:
        assert a2 == b


@settings(max_examples=40, deadline=None)
@given(paths(min_edges=2), st.data())
def test_relabel_invariance(p, data):
    t = data.draw(st.integers(0, len(p.edges) - 1))
    eps = data.draw(st.lists(st.integers(0, 5), min_size=len(p.edges), max_size=len(p.edges)))
    redist = Redistribution({i: d for i, d in enumerate(eps) if i != t})
    before = total_error(p, make_request(p, [t]), redist)
    perm = list(p.vertices)
    data.draw(st.randoms()).shuffle(perm)
    rename = dict(zip(p.vertices, perm))
    q = WeightedGraph((f"n{rename[e.u]}", f"n{rename[e.v]}", e.weight) for e in p.edges)
    assert total_error(q, make_request(q, [t]), redist) == before


@settings(max_examples=40, deadline=None)
@given(split_trees(), st.data())
def test_cross_pairs_fixed_for_integral_markings(tree_e, data):
    tree, e = tree_e
    prof = profile(tree, e)
    marked = data.draw(st.sets(st.sampled_from(prof.edges))) if prof.edges else set()
    m = Marking.of(prof, marked)
    report = total_error(tree, make_request(tree, [e]), marking_redistribution(tree, e, m))
    assert report.cross_pairs == (tree.n - 2) * tree.weight(e)


def test_outside_pairs_match_unit_error_exhaustively():
    rng = random.Random(11)
    for _ in range(15):
        tree, e = random_split_tree(rng, max_neighbors=6, max_size=3)
        prof = profile(tree, e)
        req = make_request(tree, [e])
        for bits in itertools.product((0, 1), repeat=len(prof.edges)):
            m = Marking(dict(zip(prof.edges, bits)))
            report = total_error(tree, req, marking_redistribution(tree, e, m))
            assert report.outside_pairs == marking_unit_error(tree, e, m) * tree.weight(e)
