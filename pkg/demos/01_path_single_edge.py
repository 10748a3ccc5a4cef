"""
Contracting one edge of a weighted path
=======================================

Removing an edge of weight B pulls every vertex pair that straddled it B
closer together.  The best any redistribution can do is (n - 2) * B, and
adding B to the left neighbour achieves it.
"""

from __future__ import annotations

from fractions import Fraction

from weightmerge import GridSpec, Redistribution, grid_search_path, load_graph, make_request, total_error
from weightmerge.paths import merge_single_edge

# P5 with weights 2, 3, 4, 1; contract the weight-3 edge
path = load_graph("1 2 2\n2 3 3\n3 4 4\n4 5 1\n")
request = make_request(path, [1])
plan = merge_single_edge(path, 1)
print("redistribution:", plan.redistribution)
print("predicted error:", plan.predicted_error)

# doing nothing is worse: the pairs across the edge all lose B
print("error with no reweighting:", total_error(path, request).total)
print("error of the plan:        ", total_error(path, request, plan.redistribution).total)

# any split of B between the two neighbours is just as good
for left_share in (0, 1, 2, 3):
    split = Redistribution({0: left_share, 2: 3 - left_share})
    print(f"  split {left_share}/{3 - left_share}:", total_error(path, request, split).total)

# exhaustive grid over both neighbour weights at step 1/64
spec = GridSpec.default(path, request, Fraction(1, 64))
verdict = grid_search_path(path, request, spec)
print(f"grid over {verdict.evaluated} points:", verdict.verdict, "best", verdict.best_value)
