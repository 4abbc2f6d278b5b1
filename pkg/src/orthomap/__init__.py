"""Moebius-transformed orthogonal polynomial sequences.

Build classical families, compose them with fractional linear maps,
and check every structural property of the transformed sequences:
orthogonality along image contours with index-dependent weights,
recurrences, differential equations, kernel identities, Rodrigues
formulas, generating functions, and zero geometry.
"""

from .errors import (
    BadHomogenization,
    BranchConflict,
    CoincidentPoints,
    DegenerateMap,
    InadmissibleParameters,
    NoConvergence,
    NonFiniteIntegrand,
    NonInvertibleSeries,
    NonRealCoefficients,
    NormalizationImpossible,
    OrthomapError,
    PoleAtNonpositiveInteger,
    PoleEvaluation,
    UnknownFamily,
    UnsupportedContour,
)
from .moebius import (
    IDENTITY,
    INFINITY,
    INVERSION,
    ExtComplex,
    MoebiusMap,
    apply,
    apply_finite,
    cayley_to_circle,
    cayley_to_line,
    compose,
    inverse,
)
from .polynomial import (
    ComplexPoly,
    ONE,
    X,
    ZERO,
    divide_linear,
    leading_coefficient_prediction,
    moebius_transform,
    recover_original,
)
from .gammafn import complex_gamma, complex_log_gamma
from .calculus import (
    StructuredWeight,
    classical_rodrigues,
    genfun_series,
    genfun_series_transformed,
    genfun_spec,
    sw_derivative,
    sw_eval,
    sw_log_derivative,
    sw_nth_derivative,
    transformed_rodrigues,
)
from .families import (
    BUILTIN_NAMES,
    FamilySpec,
    builtin,
    chebyshev_t,
    gen_laguerre,
    generate,
    hermite,
    jacobi,
    laguerre,
)
from .quadrature import (
    DEFAULT_SCHEME,
    GramReport,
    QuadratureScheme,
    gram_classical,
    gram_transformed_contour,
    gram_transformed_pullback,
    integrate_real,
)
from .transform import (
    ContourSpec,
    TransformedSequence,
    build,
    cd_homogeneous_confluent_residual,
    cd_homogeneous_residual,
    cd_rational_confluent_residual,
    cd_rational_residual,
    contour_spec,
    pearson_fixed_residual,
    pearson_residual,
    reduce_common_factors,
    transformed_ode_coeffs,
    transformed_ode_residual,
)
from .zeros import (
    RootSet,
    find_roots,
    interlacing_check,
    map_zero_check,
    unit_circle_check,
)
from .applications import (
    VaryingParamSequence,
    bessel_base_parameter,
    bessel_defective_identity_check,
    bessel_gate,
    bessel_generalized,
    bessel_norm,
    bessel_ode_residual,
    bessel_orthogonality_check,
    bessel_pair_weight_residual,
    bessel_sequence,
    bessel_unnormalized,
    coefficient_error,
    hermite_from_jacobi,
    jacobi_to_hermite_limit_check,
    jacobi_to_laguerre_limit_check,
    jacobi_weight_limit_check,
    laguerre_from_jacobi,
    laguerre_from_jacobi_szego,
    romanovski,
    romanovski_finite_real_check,
    romanovski_map,
    romanovski_norm,
    romanovski_orthogonality_check,
    romanovski_sequence,
    szego_laguerre_check,
)

__version__ = "0.1.0"
