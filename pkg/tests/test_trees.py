from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import lopsided_tree, path_graph, split_trees, tree_around_edge
from weightmerge import (
    NotATreeEdge,
    ValidationError,
    WrongState,
    make_request,
    marking_unit_error,
    total_error,
)
from weightmerge.trees import (
    Marking,
    MarkOp,
    OpKind,
    Side,
    apply_op,
    mark_left,
    marking_delta,
    optimal_marking,
    optimal_partial,
    partial_units,
    plan_tree,
    profile,
    unmark_left,
)


def test_profile_lopsided():
    tree, e = lopsided_tree()
    prof = profile(tree, e)
    assert [s for _, s in prof.left] == [2, 2, 3]
    assert [s for _, s in prof.right] == [20, 1]
    assert (prof.S_L, prof.S_R) == (7, 21)
    assert prof.S_L + prof.S_R == tree.n - 2


def test_profile_leaf_edge_and_path():
    tree, e = tree_around_edge(random.Random(0), [], [2, 3, 1])
    prof = profile(tree, e)
    assert prof.n_left_edges == 0 and prof.S_L == 0

    prof = profile(path_graph([1, 2, 3, 4]), 1)
    assert prof.n_left_edges <= 1 and prof.n_right_edges <= 1


def test_profile_missing_edge():
    tree, _ = lopsided_tree()
    with pytest.raises(NotATreeEdge):
        profile(tree, 99)


def test_delta_example():
    tree, e = lopsided_tree()
    prof = profile(tree, e)
    empty = Marking.of(prof)
    assert marking_delta(prof, empty, mark_left(0)) == -32
    marked = apply_op(prof, empty, mark_left(0))
    assert marking_delta(prof, empty, mark_left(0)) + marking_delta(prof, marked, unmark_left(0)) == 0


def test_delta_wrong_state():
    tree, e = lopsided_tree()
    prof = profile(tree, e)
    with pytest.raises(WrongState):
        marking_delta(prof, Marking.of(prof), unmark_left(0))
    half = Marking({prof.left[0][0]: 0.5})
    with pytest.raises(WrongState):
        marking_delta(prof, half, mark_left(0))


def test_delta_equal_sizes_expansion():
    # all sizes s: marking one left edge from empty changes the error by s*((L-1)s - R s)
    s, n_left, n_right = 3, 4, 2
    tree, e = tree_around_edge(random.Random(1), [s] * n_left, [s] * n_right)
    prof = profile(tree, e)
    assert marking_delta(prof, Marking.of(prof), mark_left(2)) == s * ((n_left - 1) * s - n_right * s)


@settings(max_examples=80, deadline=None)
@given(split_trees(), st.data())
def test_delta_consistency(tree_e, data):
    tree, e = tree_e
    prof = profile(tree, e)
    if not prof.edges:
        return
    marked = data.draw(st.sets(st.sampled_from(prof.edges)))
    m = Marking.of(prof, marked)
    side = data.draw(st.sampled_from([s for s, edges in ((Side.LEFT, prof.left), (Side.RIGHT, prof.right)) if edges]))
    entries = prof.left if side is Side.LEFT else prof.right
    i = data.draw(st.integers(0, len(entries) - 1))
    is_marked = entries[i][0] in marked
    kind = {
        (Side.LEFT, False): OpKind.MARK_LEFT,
        (Side.LEFT, True): OpKind.UNMARK_LEFT,
        (Side.RIGHT, False): OpKind.MARK_RIGHT,
        (Side.RIGHT, True): OpKind.UNMARK_RIGHT,
    }[side, is_marked]
    op = MarkOp(kind, i)
    after = apply_op(prof, m, op)
    assert marking_delta(prof, m, op) == marking_unit_error(tree, e, after) - marking_unit_error(tree, e, m)


def test_optimal_partial_lopsided():
    tree, e = lopsided_tree()
    prof = profile(tree, e)
    assert optimal_partial(prof, Side.LEFT).marked == {eid for eid, _ in prof.left}
    assert optimal_partial(prof, "right").marked == {prof.right[0][0]}


def test_optimal_partial_balanced_marks_whole_side():
    tree, e = tree_around_edge(random.Random(2), [1, 4], [2, 3])
    prof = profile(tree, e)
    assert optimal_partial(prof, Side.LEFT).marked == {eid for eid, _ in prof.left}
    assert optimal_partial(prof, Side.RIGHT).marked == {eid for eid, _ in prof.right}


@settings(max_examples=60, deadline=None)
@given(split_trees(), st.data())
def test_partial_units_match_pairwise_rule(tree_e, data):
    tree, e = tree_e
    prof = profile(tree, e)
    side = data.draw(st.sampled_from([prof.left, prof.right]))
    marked = data.draw(st.sets(st.sampled_from([eid for eid, _ in side]))) if side else set()
    m = Marking.of(prof, marked)
    assert partial_units(prof, m) == marking_unit_error(tree, e, m)


def test_partial_units_rejects_two_sided():
    tree, e = lopsided_tree()
    prof = profile(tree, e)
    with pytest.raises(ValidationError):
        partial_units(prof, Marking.of(prof, [prof.left[0][0], prof.right[0][0]]))


def test_optimal_marking_lopsided():
    tree, e = lopsided_tree()
    result = optimal_marking(tree, e)
    prof = profile(tree, e)
    assert result.unit_count == 27
    assert result.marking.marked == {prof.right[0][0]}
    plan = plan_tree(tree, e)
    assert (plan.left_units, plan.right_units) == (32, 27)


def test_optimal_marking_path_shaped_tree():
    p = path_graph([2, 5, 3])
    result = optimal_marking(p, 1)
    assert result.unit_count == 0


def test_leaf_edge_marks_nothing_on_single_subtree():
    tree, e = tree_around_edge(random.Random(4), [], [5])
    assert optimal_marking(tree, e).unit_count == 0


@settings(max_examples=40, deadline=None)
@given(split_trees())
def test_bridge_identity(tree_e):
    tree, e = tree_e
    plan = plan_tree(tree, e)
    report = total_error(tree, make_request(tree, [e]), plan.redistribution)
    assert report.total == plan.predicted_error == (plan.unit_count + tree.n - 2) * tree.weight(e)


def test_marking_validates_values():
    with pytest.raises(ValueError):
        Marking({0: 2})
    assert Marking({0: 0, 1: 1}) == Marking({1: 1})
