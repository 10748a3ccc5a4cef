"""Distance-preserving edge contraction on weighted paths and trees.

Contracting an edge shortens every shortest path through it.  The planners
here choose how to add the lost weight back onto surviving edges so that the
summed absolute change of pairwise distances is as small as possible.
"""

from .errors import (
    Disconnected,
    HasCycle,
    InconsistentReport,
    NegativeResultWeight,
    NegativeWeight,
    NoSuchEdge,
    NotAdjacentSupernodes,
    NotAMatching,
    NotAPath,
    NotATreeEdge,
    NotContiguous,
    ParseError,
    TooLarge,
    ValidationError,
    WeightMergeError,
    WrongState,
)
from .graph import (
    ContractedGraph,
    ContractionRequest,
    Edge,
    GraphKind,
    Mode,
    Redistribution,
    Supernode,
    WeightedGraph,
    contract,
    derive_merged_sets,
    load_graph,
    make_request,
    neighbor_subtrees,
)
from .metrics import ErrorReport, abs_pair_bound_check, marking_unit_error, total_error
from .oracle import (
    GridSpec,
    OracleVerdict,
    enumerate_markings,
    grid_search_path,
    marking_error_table,
    sample_redistributions,
)
from .paths import (
    PathCase,
    PathMergePlan,
    el_table,
    merge_independent,
    merge_single_edge,
    merge_subpath,
    merge_supernode_pair,
    plan_for,
    sequential_left_marking,
)
from .trees import (
    Marking,
    NeighborProfile,
    Side,
    apply_op,
    marking_delta,
    optimal_marking,
    optimal_partial,
    partial_units,
    plan_tree,
    profile,
)

__version__ = "0.1.0"
