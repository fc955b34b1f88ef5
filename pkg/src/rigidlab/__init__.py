"""rigidlab: bar-joint rigidity, bipartite stress spaces, helix curves, and
distinct-distance censuses, with a dual exact-rational / floating backend."""

from rigidlab.bipartite import (
    BipartiteRealization,
    BolkerRothReport,
    CNotSpanningError,
    affine_dependency_space,
    affine_span_dim,
    boundary_set,
    classify,
    kernel_dim_via_stress,
    quadric_space,
    stress_space_dim_bolker_roth,
    stress_space_direct,
)
from rigidlab.census import (
    DistanceCensus,
    GrowthFit,
    TripleCount,
    distinct_distances,
    growth_fit,
    projected_triple_count,
    run_census,
)
from rigidlab.curves import (
    CurveHandle,
    HelixSpec,
    curve_derivative,
    curve_point,
    isometry_witness,
    qk_membership,
    quadric_containment,
    sliding_family,
    translation_invariance_check,
)
from rigidlab.framework import (
    Framework,
    Graph,
    Realization,
    RigidityReport,
    are_congruent,
    are_equivalent,
    complete_bipartite,
    edge_function,
    infinitesimal_rigidity,
    regularity_probe,
    rigidity_matrix,
    trivial_motion_space,
)
from rigidlab.linalg import (
    ArithmeticModeError,
    Matrix,
    RankPolicy,
    kernel_basis,
    left_kernel_basis,
    rank,
)

__all__ = [
    "ArithmeticModeError",
    "BipartiteRealization",
    "BolkerRothReport",
    "CNotSpanningError",
    "CurveHandle",
    "DistanceCensus",
    "Framework",
    "Graph",
    "GrowthFit",
    "HelixSpec",
    "Matrix",
    "RankPolicy",
    "Realization",
    "RigidityReport",
    "TripleCount",
    "affine_dependency_space",
    "affine_span_dim",
    "are_congruent",
    "are_equivalent",
    "boundary_set",
    "classify",
    "complete_bipartite",
    "curve_derivative",
    "curve_point",
    "distinct_distances",
    "edge_function",
    "growth_fit",
    "infinitesimal_rigidity",
    "isometry_witness",
    "kernel_basis",
    "kernel_dim_via_stress",
    "left_kernel_basis",
    "projected_triple_count",
    "qk_membership",
    "quadric_containment",
    "quadric_space",
    "rank",
    "regularity_probe",
    "rigidity_matrix",
    "run_census",
    "sliding_family",
    "stress_space_dim_bolker_roth",
    "stress_space_direct",
    "translation_invariance_check",
    "trivial_motion_space",
]

__version__ = "0.1.0"
