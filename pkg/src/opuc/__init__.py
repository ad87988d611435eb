"""Numerical toolkit for orthogonal polynomials on the unit circle and their
higher-order Szego-type sum rules."""

from .errors import (
    BranchError,
    ConfigError,
    DiskGuardError,
    DomainError,
    NonFiniteSampleError,
    OPUCError,
    QuadratureError,
)
from .opuc_core import (
    BernsteinSzegoWeight,
    MonicPolynomialPair,
    bs_entropy,
    caratheodory_eval,
    caratheodory_from_measure,
    inverse_schur,
    relative_szego_eval,
    relative_szego_from_measure,
    schur_eval,
    step_fourier_check,
    szego_recursion,
    taylor_A,
    taylor_A_numeric,
)
from .quadrature import IntegralResult, entropy_functional, integrate, periodic_mean
from .verblunsky import ANTIPODAL, DOUBLE_AT_ZERO, FamilySpec, SingularityProfile, generate

__all__ = [
    "ANTIPODAL",
    "DOUBLE_AT_ZERO",
    "BernsteinSzegoWeight",
    "BranchError",
    "ConfigError",
    "DiskGuardError",
    "DomainError",
    "FamilySpec",
    "IntegralResult",
    "MonicPolynomialPair",
    "NonFiniteSampleError",
    "OPUCError",
    "QuadratureError",
    "SingularityProfile",
    "bs_entropy",
    "caratheodory_eval",
    "caratheodory_from_measure",
    "entropy_functional",
    "generate",
    "integrate",
    "inverse_schur",
    "periodic_mean",
    "relative_szego_eval",
    "relative_szego_from_measure",
    "schur_eval",
    "step_fourier_check",
    "szego_recursion",
    "taylor_A",
    "taylor_A_numeric",
]
