"""Exact operator-valued free probability over the diagonal algebra D_N."""

from .dalg import DiagonalScalar, d_add, d_invert, d_mul, format_rational, parse_rational
from .errors import (
    BoundError,
    DimensionError,
    DnFreeError,
    DomainError,
    NotInvertibleError,
    OrderError,
    ParseError,
    TruncationError,
    ValidationError,
)
from .ncpart import (
    NoncrossingPartition,
    catalan,
    enumerate_noncrossing,
    is_noncrossing,
    kreweras_complement,
    leq,
    mobius_brute,
    mobius_full,
    parse_partition,
)
from .series import (
    TruncatedSeries,
    boxed_convolve,
    boxed_inverse,
    mob_series,
    multiplicative_extension,
    s_add,
    s_comp_inverse,
    s_compose,
    s_mul,
    zeta_series,
)
from .stardist import (
    JointDistribution,
    check_freeness,
    classify_even,
    classify_r_diagonal,
    classify_semicircular,
    divide_free,
    joint_from_cumulants,
    joint_from_free_pair,
    mixed_cumulant,
)
from .transforms import (
    CumulantSequence,
    Distribution,
    cumulants_to_moments,
    f_homomorphism,
    free_add_convolve,
    free_mult_convolve,
    free_poisson,
    moment_series,
    moments_to_cumulants,
    point_mass,
    product_cumulants,
    r_transform,
    s_transform,
    semicircular,
)

__all__ = [
    "DiagonalScalar",
    "d_add",
    "d_invert",
    "d_mul",
    "format_rational",
    "parse_rational",
    "BoundError",
    "DimensionError",
    "DnFreeError",
    "DomainError",
    "NotInvertibleError",
    "OrderError",
    "ParseError",
    "TruncationError",
    "ValidationError",
    "NoncrossingPartition",
    "catalan",
    "enumerate_noncrossing",
    "is_noncrossing",
    "kreweras_complement",
    "leq",
    "mobius_brute",
    "mobius_full",
    "parse_partition",
    "TruncatedSeries",
    "boxed_convolve",
    "boxed_inverse",
    "mob_series",
    "multiplicative_extension",
    "s_add",
    "s_comp_inverse",
    "s_compose",
    "s_mul",
    "zeta_series",
    "JointDistribution",
    "check_freeness",
    "classify_even",
    "classify_r_diagonal",
    "classify_semicircular",
    "divide_free",
    "joint_from_cumulants",
    "joint_from_free_pair",
    "mixed_cumulant",
    "CumulantSequence",
    "Distribution",
    "cumulants_to_moments",
    "f_homomorphism",
    "free_add_convolve",
    "free_mult_convolve",
    "free_poisson",
    "moment_series",
    "moments_to_cumulants",
    "point_mass",
    "product_cumulants",
    "r_transform",
    "s_transform",
    "semicircular",
]

__version__ = "0.1.0"
