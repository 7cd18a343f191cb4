"""Parametric geometry of numbers over enumerated integer vectors."""

from .analysis import (
    ExponentEstimates,
    IntersectionRow,
    TheoremVReport,
    check_theorem_v,
    estimate_exponents,
    intersection_diagnostics,
)
from .intrank import IntBasis, independent, int_rank
from .io import (
    dump_json,
    estimates_to_dict,
    profile_to_dicts,
    sequence_to_dicts,
    theorem_report_to_dict,
    write_diagnostics_csv,
    write_profile_csv,
    write_sequence_csv,
)
from .profile import (
    ProfileSample,
    build_q_grid,
    crossing_q,
    minkowski_defect,
    profile,
    vector_L,
    vector_min_point,
)
from .vectors import (
    ApproxVector,
    InsufficientData,
    InsufficientRank,
    MinimalPointSequence,
    PgnError,
    RationalDependence,
    TargetPoint,
    enumerate_candidates,
    minimal_points,
)

__all__ = [
    "ApproxVector",
    "ExponentEstimates",
    "IntBasis",
    "IntersectionRow",
    "InsufficientData",
    "InsufficientRank",
    "MinimalPointSequence",
    "PgnError",
    "ProfileSample",
    "RationalDependence",
    "TargetPoint",
    "TheoremVReport",
    "build_q_grid",
    "check_theorem_v",
    "crossing_q",
    "dump_json",
    "enumerate_candidates",
    "estimates_to_dict",
    "estimate_exponents",
    "independent",
    "int_rank",
    "intersection_diagnostics",
    "minimal_points",
    "minkowski_defect",
    "profile",
    "profile_to_dicts",
    "sequence_to_dicts",
    "theorem_report_to_dict",
    "vector_L",
    "vector_min_point",
    "write_diagnostics_csv",
    "write_profile_csv",
    "write_sequence_csv",
]
