"""fracspec: a desk-scale numerical lab for weighted stability of
fractional evolution equations D^a u = A u + f on the half line.

The package solves the equation for matrix operators by two independent
routes, analyses solutions in polynomially weighted norms, locates the
boundary spectrum and the Laplace-transform singularities of signals, and
runs the resulting decay prediction as an executable verdict procedure.
"""

from .errors import (
    BranchCutViolation,
    ConfigError,
    ConvergenceFailure,
    DefectiveMatrix,
    DomainError,
    FracspecError,
    GridError,
    GridMismatch,
    MissingCoefficient,
    ResidualTooLarge,
    SingularityTooClose,
    SingularMatrix,
    StepSizeTooLarge,
    TooFewPoints,
    TruncationError,
)
from .special import (
    fractional_kernel,
    mittag_leffler,
    mittag_leffler_array,
    polynomial_weight_laplace,
    principal_power,
    upper_incomplete_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BranchCutViolation",
    "ConfigError",
    "ConvergenceFailure",
    "DefectiveMatrix",
    "DomainError",
    "FracspecError",
    "GridError",
    "GridMismatch",
    "MissingCoefficient",
    "ResidualTooLarge",
    "SingularityTooClose",
    "SingularMatrix",
    "StepSizeTooLarge",
    "TooFewPoints",
    "TruncationError",
    "fractional_kernel",
    "mittag_leffler",
    "mittag_leffler_array",
    "polynomial_weight_laplace",
    "principal_power",
    "upper_incomplete_gamma",
]
