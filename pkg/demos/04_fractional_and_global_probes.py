"""
Probing beyond integral neighbour markings
==========================================

Two questions the closed forms leave open in practice: could marking a
neighbour only partly (adding c * w* with 0 < c < 1) help, and could
touching edges further away help?  Random probes never find an
improvement.  This is evidence, not proof.
"""

from __future__ import annotations

import random
from fractions import Fraction

from weightmerge import GridSpec, WeightedGraph, grid_search_path, make_request, sample_redistributions
from weightmerge.trees import plan_tree, profile


def random_tree(rng: random.Random, n: int) -> tuple[WeightedGraph, int]:
    """Random recursive tree; the edge to contract joins vertices 0 and 1."""
    edges = [(0, 1, rng.randint(1, 4))]
    edges += [(rng.randrange(v), v, rng.randint(0, 4)) for v in range(2, n)]
    return WeightedGraph(edges), 0


rng = random.Random(2024)
trees = [random_tree(rng, rng.randint(4, 12)) for _ in range(30)]

fractional = global_ = targeted = 0
for i, (tree, e) in enumerate(trees):
    req = make_request(tree, [e])
    plan = plan_tree(tree, e)

    # partial marks on neighbour edges, outside pairs only
    v = sample_redistributions(tree, req, 1000, i, fractional=True, part="outside")
    fractional += not v.confirmed

    # random changes on any surviving edge
    v = sample_redistributions(tree, req, 2000, i)
    global_ += not v.confirmed

    # start from the optimum and grid-search one neighbour and one far edge
    prof = profile(tree, e)
    far = [x.id for x in tree.edges if x.id != e and x.id not in prof.edges]
    if prof.edges and far:
        hi = sum(x.weight for x in tree.edges)
        spec = GridSpec(Fraction(1, 4), {prof.edges[0]: (0, hi), far[0]: (0, hi)})
        v = grid_search_path(tree, req, spec, base=plan.redistribution, claimed=plan.predicted_error)
        targeted += not v.confirmed

print(f"{len(trees)} trees")
print("fractional markings that beat the optimum:", fractional)
print("global redistributions that beat it:     ", global_)
print("targeted far-edge grids that beat it:     ", targeted)
