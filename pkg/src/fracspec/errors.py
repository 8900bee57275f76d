"""Exception hierarchy shared across the package."""


class FracspecError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FracspecError):
    """An argument lies outside the mathematical domain of the operation."""


class BranchCutViolation(DomainError):
    """A complex power was requested on the closed negative real axis."""


class ConvergenceFailure(FracspecError):
    """A numerical scheme could not certify the requested tolerance."""


class GridError(FracspecError):
    """Inconsistent sampling-grid metadata."""


class GridMismatch(GridError):
    """Two signals (or a signal and a scenario) live on different grids."""


class TooFewPoints(GridError):
    """The grid is too short for the requested operation."""


class TruncationError(FracspecError):
    """A half-line integral cannot be truncated within the tail tolerance."""


class SingularityTooClose(FracspecError):
    """Contour quadrature failed to converge; another singularity intrudes."""


class MissingCoefficient(FracspecError):
    """A Laurent expansion lacks a coefficient required by the bound."""


class SingularMatrix(FracspecError):
    """The shifted matrix is singular (spectral parameter hits the spectrum)."""


class DefectiveMatrix(FracspecError):
    """The operator is not diagonalizable; the analytic route is unavailable."""


class StepSizeTooLarge(FracspecError):
    """The time-stepping corrector cannot contract at this step size."""


class ResidualTooLarge(FracspecError):
    """A computed solution fails its own consistency residual."""


class ConfigError(FracspecError):
    """A scenario configuration file is malformed."""
