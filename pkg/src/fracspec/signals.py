"""Vector-valued signals sampled on a uniform half-line grid t_j = j*dt."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridError, GridMismatch


@dataclass(frozen=True)
class SampledSignal:
    """A function value table on the uniform grid t_j = j*dt, j = 0..m.

    Attributes
    ----------
    dt : grid step, > 0.
    values : complex array of shape (m+1, d); one row per grid point.
    degree : the polynomial weight degree n the signal is judged against.
    t0 : left endpoint; always 0 in this package.
    """

    dt: float
    values: np.ndarray
    degree: int = 0
    t0: float = field(default=0.0)

    def __post_init__(self):
        if self.dt <= 0.0 or not np.isfinite(self.dt):
            raise GridError(f"grid step must be positive and finite, got {self.dt}")
        if self.t0 != 0.0:
            raise GridError("signals start at t0 = 0 in this package")
        if self.degree < 0 or int(self.degree) != self.degree:
            raise GridError(f"weight degree must be a nonnegative integer, got {self.degree}")
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim == 1:
            vals = vals[:, None]
        if vals.ndim != 2 or vals.shape[0] < 1:
            raise GridError(f"values must be a non-empty (m+1, d) table, got shape {vals.shape}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "degree", int(self.degree))

    # -- geometry -----------------------------------------------------------
    @property
    def nsamples(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def t_max(self) -> float:
        return (self.nsamples - 1) * self.dt

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.nsamples) * self.dt

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_function(cls, fn, t_max: float, steps: int, degree: int = 0) -> "SampledSignal":
        """Sample ``fn`` (scalar or vector valued, vectorized or not) on
        ``steps + 1`` equispaced points of [0, t_max]."""
        if steps < 1:
            raise GridError("need at least one step")
        dt = float(t_max) / steps
        t = np.arange(steps + 1) * dt
        try:
            vals = np.asarray(fn(t), dtype=complex)
            if vals.shape[0] != t.shape[0]:
                raise ValueError
            if vals.ndim == 1:
                vals = vals[:, None]
        except Exception:
            rows = [np.atleast_1d(np.asarray(fn(ti), dtype=complex)) for ti in t]
            vals = np.stack(rows, axis=0)
        return cls(dt=dt, values=vals, degree=degree)

    # -- pointwise helpers ----------------------------------------------------
    def magnitudes(self) -> np.ndarray:
        """Euclidean norm of each sample."""
        return np.linalg.norm(self.values, axis=1)

    def with_values(self, values: np.ndarray) -> "SampledSignal":
        return SampledSignal(dt=self.dt, values=values, degree=self.degree)

    def truncated(self, nsamples: int) -> "SampledSignal":
        """Keep the first ``nsamples`` rows."""
        if nsamples < 1 or nsamples > self.nsamples:
            raise GridError(f"cannot truncate to {nsamples} of {self.nsamples} samples")
        return self.with_values(self.values[:nsamples])

    def _check_same_grid(self, other: "SampledSignal"):
        if not isinstance(other, SampledSignal):
            raise TypeError("expected a SampledSignal")
        if abs(self.dt - other.dt) > 1e-12 * self.dt or self.values.shape != other.values.shape:
            raise GridMismatch(
                f"grids differ: dt {self.dt} vs {other.dt}, "
                f"shape {self.values.shape} vs {other.values.shape}"
            )

    def __add__(self, other: "SampledSignal") -> "SampledSignal":
        self._check_same_grid(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "SampledSignal") -> "SampledSignal":
        self._check_same_grid(other)
        return self.with_values(self.values - other.values)

    def __mul__(self, scalar) -> "SampledSignal":
        return self.with_values(self.values * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "SampledSignal":
        return self.with_values(-self.values)
