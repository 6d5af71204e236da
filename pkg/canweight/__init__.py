"""canweight - canonical weights of isolated hypersurface singularities.

Works from the exponent support of a polynomial f with exact arithmetic:
- Classification (canonical, log-canonical, not log-canonical) from the Newton polyhedron
- The essential cone of f, its extreme rays and Hilbert basis
- The canonical weight, when a weighted blow-up is the canonical modification
- Discrepancies of weighted blow-ups
- Support conditions for simultaneous canonical modifications of families
"""

__version__ = "0.1.0"

from .cone import (
    RationalCone,
    SimplicialFrame,
    componentwise_min,
    cone_from_inequalities,
    cone_from_rays,
    contains,
    hilbert_basis,
    lattice_points_under,
    meet_closed_under,
    simplicial_frame,
)
from .config import Settings, get_settings
from .deformation import (
    SimultaneousReport,
    SupportFamily,
    halfspace_condition,
    load_family,
    segment_family,
    simultaneous_report,
    weight_constancy,
)
from .exceptions import (
    CanweightError,
    ConfigurationError,
    DimensionMismatchError,
    DomainError,
    EnumerationLimitError,
    ExponentLimitError,
    InputError,
    InvariantViolationError,
    MalformedWeightError,
    NonPointedConeError,
    PolynomialSyntaxError,
)
from .newton import (
    NewtonPolyhedron,
    OnePosition,
    SingularityClass,
    SingularityLabel,
    build_newton,
    check_nondegeneracy_limited,
    classify,
    compact_faces,
    face_containing_one,
    hodge_type_0_n_minus_1,
    is_type_T,
    position_of_one,
    quasi_reduced,
)
from .report import Report, render, to_json
from .support import (
    ExponentVector,
    PolynomialSupport,
    WeightVector,
    load_polynomial,
    make_primitive,
    monomial_divisor_weight,
    pairing,
    parse_polynomial,
    parse_weight,
    weight_of_poly,
)
from .weights import (
    DiscrepancyRecord,
    FMinimalityCertificate,
    WeightVerdict,
    absolutely_minimal,
    canonical_weight_verdict,
    discrepancies,
    essential_cone,
    interior_chart,
    is_canonical_weight,
    is_f_minimal,
    leading_coefficient,
    leq_f,
    prec_f,
    star_subdivision,
    surface_triad_weight,
    three_ones_report,
    weights_above_threshold,
)

__all__ = [
    # Vectors and supports
    "ExponentVector",
    "WeightVector",
    "PolynomialSupport",
    "pairing",
    "weight_of_poly",
    "monomial_divisor_weight",
    "make_primitive",
    "parse_polynomial",
    "parse_weight",
    "load_polynomial",
    # Cones
    "RationalCone",
    "SimplicialFrame",
    "cone_from_inequalities",
    "cone_from_rays",
    "contains",
    "hilbert_basis",
    "componentwise_min",
    "meet_closed_under",
    "lattice_points_under",
    "simplicial_frame",
    # Newton polyhedra
    "NewtonPolyhedron",
    "OnePosition",
    "SingularityClass",
    "SingularityLabel",
    "build_newton",
    "position_of_one",
    "face_containing_one",
    "compact_faces",
    "classify",
    "quasi_reduced",
    "is_type_T",
    "check_nondegeneracy_limited",
    "hodge_type_0_n_minus_1",
    # Canonical weights
    "essential_cone",
    "absolutely_minimal",
    "star_subdivision",
    "interior_chart",
    "leq_f",
    "prec_f",
    "is_f_minimal",
    "is_canonical_weight",
    "canonical_weight_verdict",
    "discrepancies",
    "leading_coefficient",
    "weights_above_threshold",
    "three_ones_report",
    "surface_triad_weight",
    "DiscrepancyRecord",
    "FMinimalityCertificate",
    "WeightVerdict",
    # Families
    "SupportFamily",
    "SimultaneousReport",
    "segment_family",
    "load_family",
    "halfspace_condition",
    "weight_constancy",
    "simultaneous_report",
    # Reports
    "Report",
    "render",
    "to_json",
    # Config
    "Settings",
    "get_settings",
    # Exceptions
    "CanweightError",
    "ConfigurationError",
    "InputError",
    "PolynomialSyntaxError",
    "DimensionMismatchError",
    "ExponentLimitError",
    "MalformedWeightError",
    "DomainError",
    "NonPointedConeError",
    "EnumerationLimitError",
    "InvariantViolationError",
]
