"""Reduction from multicolored clique to maximum induced forest, with exact
mim-width certification, H-graph machinery, and brute-force oracles."""

from .graph_core import (
    BipartiteCutGraph,
    Cut,
    Graph,
    cut_graph,
    induced_subgraph,
    is_forest,
    max_induced_matching,
    mim_value,
)
from .hgraph import (
    HRepresentation,
    MultiEdge,
    MultiGraph,
    intersection_graph,
    linear_order_from_representation,
    subdivide_edge,
    subdivide_uniform,
    validate_representation,
)
from .oracles import (
    BudgetExceeded,
    CliqueWitness,
    ContractViolation,
    ForestWitness,
    extract_clique,
    is_multicolored_clique,
    solve_fvs,
    solve_mcc,
    solve_mif,
)
from .reduction import (
    MccInstance,
    ReductionOutput,
    VertexClass,
    build_h_pattern,
    build_h_subdivision,
    build_k_pattern,
    build_k_representation,
    build_models,
    build_reduction,
    pad_instance,
)
from .verification import (
    CheckReport,
    check_adjacency_characterization,
    check_counting_bounds,
    check_forest_shape,
    check_forward_construction,
    check_index_agreement,
    check_k_representation,
    check_structure,
    check_width_bound,
    clique_free_instance,
    end_to_end,
    forward_forest,
    planted_instance,
    random_instance,
    run_verification,
)
from .widths import (
    BranchDecomposition,
    caterpillar_from_order,
    mimw,
    mimw_of_order,
    prefix_cut_profile,
    validate_decomposition,
)

__version__ = "0.1.0"
