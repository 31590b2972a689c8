"""Pathwidth preprocessing toolkit.

Exact desk-scale width oracles, pathwidth-safe reduction rules, polynomial
kernelizers for structural modulators, and the cutwidth-to-weighted-treewidth
composition gadget, all cross-checked against each other.
"""

from .graph import (
    Graph,
    Instance,
    WeightedGraph,
    add_edge,
    add_vertex,
    contract_edge,
    count_internally_disjoint_paths,
    delete_vertex,
    delete_vertices,
    induced_subgraph,
    is_simplicial,
    simplicial_components,
    special_neighbors,
)
from .decompositions import (
    EliminationOrdering,
    LinearLayout,
    PathDecomposition,
    TreeDecomposition,
    decomposition_width,
    normalize_simplicial,
    validate_path_decomposition,
    validate_tree_decomposition,
)
from .oracles import (
    cutwidth_exact,
    elimination_cost,
    pathwidth_exact,
    treewidth_exact,
    weighted_treewidth_exact,
)
from .rules import (
    DecidedNo,
    DecidedYes,
    Reduced,
    ReductionOutcome,
    RuleApplication,
    RuleId,
    exhaustive_reduce,
    rule1,
    rule2,
    rule3,
    rule3g,
    rule4,
    rule5,
    rule6,
    rule7,
)
from .kernels import (
    BoundedComponents,
    IndependentSet,
    KernelResult,
    StarForest,
    canonical_no_instance,
    canonical_yes_instance,
    kernelize_bounded_components,
    kernelize_star_forest,
    kernelize_vertex_cover,
    recognize,
    structural_counts,
)
from .composition import (
    ComposedInstance,
    Cutwidth3Instance,
    EquivalenceKey,
    Solved,
    canonical_ordering_cost,
    compose,
    e_weight_closed_form,
    e_weight_simulated,
    equivalence_key,
    expand_weights,
    prepare_batch,
    to_modulator_instance,
    verify_composition,
)
from .errors import (
    AuditError,
    BatchError,
    BudgetExceededError,
    CapExceededError,
    FamilyError,
    FormatError,
    PwkitError,
)

__version__ = "0.1.0"
