"""
Contracting a run of edges
==========================

When k consecutive edges collapse into one supernode, marking left
neighbours one edge at a time piles all the weight onto a single side.
Splitting the run at its middle does better: the supernode then sits at
the median of the vertices it swallowed.
"""

from __future__ import annotations

from weightmerge import load_graph, make_request, total_error
from weightmerge.paths import el_table, merge_subpath, sequential_left_marking

text = "a b 1\nb c 1\nc d 1\nd e 1\ne f 1\nf g 1\ng h 1\nh i 1\n"
path = load_graph(text)
run = [2, 3, 4, 5]
request = make_request(path, run)

greedy = sequential_left_marking(path, run)
optimal = merge_subpath(path, run)
print("one edge at a time:", greedy, "error", total_error(path, request, greedy).total)
print("split at the middle:", optimal.redistribution, "error", optimal.predicted_error)

# left-side error for every split point; the middle entry is the smallest
weights = [1, 1, 1, 1, 1, 1]
print("left-side error by split:", [int(v) for v in el_table(weights, n_left=2)])

# uneven weights shift nothing: the split is by edge count, not by weight
path = load_graph("a b 1\nb c 1\nc d 2\nd e 4\ne f 8\nf g 1\n")
plan = merge_subpath(path, [2, 3])
print("w = 1, 2, 4, 8:", plan.redistribution, "error", plan.predicted_error)
