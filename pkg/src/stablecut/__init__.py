"""Maximum-weight stable matchings via ideal cuts in the rotation poset."""

from .core import (
    BlockingPair,
    ContractViolation,
    Instance,
    Matching,
    ParseError,
    WeightFunction,
    blocking_pairs,
    dominates,
    format_scaled,
    gale_shapley,
    is_stable,
    join,
    matching_weight,
    meet,
    parse_instance,
    parse_weights,
    preset_desirable_undesirable,
    preset_egalitarian,
)
from .idealcut import (
    CondensedDag,
    Edge,
    Flow,
    IdealCut,
    ResidualArc,
    ResidualGraph,
    WeightedDag,
    big_capacity,
    check_ideal_cut,
    condense,
    cut_weight,
    enumerate_max_cuts,
    feasible_flow,
    iterate_ideal_cuts,
    max_weight_ideal_cut,
    min_flow,
    parse_dag,
    residual,
    validate_dag,
)
from .oracle import (
    all_ideal_cuts,
    all_stable_matchings,
    brute_max_weight_cut,
    brute_max_weight_matching,
)
from .reduction import (
    ReductionArtifacts,
    UniqueMatching,
    build_reduction,
    cut_to_matching,
    matching_weight_from_cut,
    solve_max_weight,
)
from .rotations import (
    Rotation,
    RotationPoset,
    all_closed_sets,
    build_poset,
    closed_set_to_matching,
    eliminate,
    enumerate_rotations,
    exposed_rotations,
    rotation_count_limit,
)
from .sublattice import (
    MetaRotationPoset,
    boy_optimal_max,
    closed_subset_to_max_matching,
    enumerate_max_matchings,
    girl_optimal_max,
    meta_rotation_poset,
    solve_bi_objective,
)

__all__ = [
    "BlockingPair",
    "CondensedDag",
    "ContractViolation",
    "Edge",
    "Flow",
    "IdealCut",
    "Instance",
    "Matching",
    "MetaRotationPoset",
    "ParseError",
    "ReductionArtifacts",
    "ResidualArc",
    "ResidualGraph",
    "Rotation",
    "RotationPoset",
    "UniqueMatching",
    "WeightFunction",
    "WeightedDag",
    "all_closed_sets",
    "all_ideal_cuts",
    "all_stable_matchings",
    "big_capacity",
    "brute_max_weight_cut",
    "brute_max_weight_matching",
    "check_ideal_cut",
    "blocking_pairs",
    "boy_optimal_max",
    "build_poset",
    "build_reduction",
    "closed_set_to_matching",
    "closed_subset_to_max_matching",
    "condense",
    "cut_to_matching",
    "cut_weight",
    "dominates",
    "eliminate",
    "enumerate_max_cuts",
    "enumerate_max_matchings",
    "enumerate_rotations",
    "exposed_rotations",
    "feasible_flow",
    "format_scaled",
    "gale_shapley",
    "girl_optimal_max",
    "is_stable",
    "iterate_ideal_cuts",
    "join",
    "matching_weight",
    "matching_weight_from_cut",
    "max_weight_ideal_cut",
    "meet",
    "meta_rotation_poset",
    "min_flow",
    "parse_dag",
    "parse_instance",
    "parse_weights",
    "preset_desirable_undesirable",
    "preset_egalitarian",
    "residual",
    "rotation_count_limit",
    "solve_bi_objective",
    "solve_max_weight",
    "validate_dag",
]
