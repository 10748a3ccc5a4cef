"""
Marking neighbour edges in a tree
=================================

In a tree the contracted edge can have many neighbours on each side.  Each
one is either marked (it absorbs w*) or left alone.  The optimum marks one
side only, and on that side exactly the edges whose subtree is at least the
size imbalance between the sides.
"""

from __future__ import annotations

from pathlib import Path

from weightmerge import enumerate_markings, load_graph, marking_unit_error
from weightmerge.trees import Marking, plan_tree

data = Path(__file__).resolve().parent / "data"
tree = load_graph((data / "lopsided.txt").read_text())
e_star = tree.find_edge("v1", "v2")
plan = plan_tree(tree, e_star)
prof = plan.profile
print("left subtree sizes: ", [size for _, size in prof.left])
print("right subtree sizes:", [size for _, size in prof.right])

for name, edges in [
    ("mark all left", [e for e, _ in prof.left]),
    ("mark all right", [e for e, _ in prof.right]),
    ("mark the size-20 edge", [e for e, s in prof.right if s == 20]),
]:
    print(f"{name:>22}: {marking_unit_error(tree, e_star, Marking.of(prof, edges))} units")

print("best left-only marking: ", sorted(plan.left_partial.marked), plan.left_units)
print("best right-only marking:", sorted(plan.right_partial.marked), plan.right_units)
print("chosen:", sorted(plan.marking.marked), "total error", plan.predicted_error)

verdict = enumerate_markings(tree, e_star)
print(f"all {verdict.evaluated} markings enumerated:", verdict.verdict)
