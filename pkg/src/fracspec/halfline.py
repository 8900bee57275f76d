"""Resolvent of the differentiation operator on the half line, Laplace
transforms of sampled signals, Laurent coefficients by contour quadrature,
singularity scanning and ergodic means.

Sign convention: ``resolvent_apply`` returns the polynomially bounded y with
lam*y - y' = f on both half planes; for Re lam > 0 that is the decaying tail
integral y(t) = int_t^inf e^{lam(t-s)} f(s) ds, for Re lam < 0 the negated
forward integral y(t) = -int_0^t e^{lam(t-s)} f(s) ds.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.signal import lfilter

from .errors import (
    DomainError,
    MissingCoefficient,
    SingularityTooClose,
    TruncationError,
)
from .signals import SampledSignal
from .weighted import weighted_norm

#: truncated-tail tolerance: e^{-Re(lam) (T - t)} (1+T)^n must stay below this
TAIL_TOL = 1e-10


# ---------------------------------------------------------------------------
# product integration cells for exponential kernels
# ---------------------------------------------------------------------------

def _exp_cell_weights(kappa: complex, dt: float):
    """(w0, w1) with int_0^dt e^{kappa*tau} (v0 + (v1-v0) tau/dt) dtau
    = w0*v0 + w1*v1; exact for the linear interpolant."""
    x = kappa * dt
    if abs(x) < 1e-4:
        # series in x to avoid cancellation
        s0 = dt * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0)
        s1 = dt * dt * (0.5 + x / 3.0 + x * x / 8.0 + x * x * x / 30.0)
    else:
        e = cmath.exp(x)
        s0 = (e - 1.0) / kappa
        s1 = (dt * e - s0) / kappa
    w1 = s1 / dt
    return s0 - w1, w1


def tail_length(re_lambda: float, t_max: float, n: int, tail_tol: float = TAIL_TOL) -> float:
    """Distance from the grid end beyond which the truncated tail of the
    decaying integral is certifiably below ``tail_tol``."""
    if re_lambda <= 0.0:
        raise DomainError("tail criterion applies to Re lambda > 0")
    return (math.log(1.0 / tail_tol) + n * math.log1p(t_max)) / re_lambda


def _report_samples(f: SampledSignal, re_lambda: float, n: int, tail_tol: float) -> int:
    """Number of leading samples for which the tail criterion holds."""
    span = f.t_max - tail_length(re_lambda, f.t_max, n, tail_tol)
    if span < 0.0:
        raise TruncationError(
            f"grid [0, {f.t_max}] too short for Re lambda = {re_lambda} "
            f"at weight degree {n}"
        )
    return int(math.floor(span / f.dt + 1e-9)) + 1


def resolvent_apply(
    f: SampledSignal,
    lam: complex,
    n: int | None = None,
    tail_tol: float = TAIL_TOL,
) -> SampledSignal:
    """Apply the resolvent of d/dt: the n-bounded solution of lam*y - y' = f.

    For Re lam > 0 the report range shrinks so that the truncated tail
    satisfies e^{-Re(lam)(T-t)} (1+T)^n < tail_tol for every reported t.
    """
    lam = complex(lam)
    if lam.real == 0.0:
        raise DomainError("the resolvent is only evaluated off the imaginary axis")
    if n is None:
        n = f.degree
    m = f.nsamples - 1
    if m < 1:
        raise TruncationError("cannot integrate a single sample")
    dt = f.dt
    if lam.real < 0.0:
        w0, w1 = _exp_cell_weights(lam, dt)
        # cell_j = w0 * f_j + w1 * f_{j-1}  (tau measured backwards from t_j)
        cells = np.empty_like(f.values)
        cells[0] = 0.0
        cells[1:] = w0 * f.values[1:] + w1 * f.values[:-1]
        decay = cmath.exp(lam * dt)
        acc = lfilter([1.0], [1.0, -decay], cells, axis=0)
        return f.with_values(-acc)
    keep = _report_samples(f, lam.real, n, tail_tol)
    w0, w1 = _exp_cell_weights(-lam, dt)
    cells = np.zeros_like(f.values)
    cells[:m] = w0 * f.values[:-1] + w1 * f.values[1:]
    decay = cmath.exp(-lam * dt)
    rev = np.concatenate([np.zeros((1, f.dim)), cells[:m][::-1]], axis=0)
    acc = lfilter([1.0], [1.0, -decay], rev, axis=0)[::-1]
    return f.with_values(acc[:keep])


def laplace_transform(
    f: SampledSignal,
    lam: complex,
    n: int | None = None,
    tail_tol: float = TAIL_TOL,
) -> np.ndarray:
    """Truncated product-trapezoidal Laplace transform of the signal.

    Agrees with ``resolvent_apply(f, lam, n)`` at t = 0 up to roundoff.
    """
    lam = complex(lam)
    if lam.real <= 0.0:
        raise DomainError("the transform is truncated; it needs Re lambda > 0")
    if n is None:
        n = f.degree
    t_max = f.t_max
    if math.exp(-lam.real * t_max) * (1.0 + t_max) ** n >= tail_tol:
        raise TruncationError(
            f"grid [0, {t_max}] too short to transform at Re lambda = {lam.real} "
            f"with weight degree {n}"
        )
    w0, w1 = _exp_cell_weights(-lam, f.dt)
    phase = np.exp(-lam * f.times[:-1])
    return phase @ (w0 * f.values[:-1] + w1 * f.values[1:])


def feasible_eta_sequence(
    f: SampledSignal,
    n: int | None = None,
    max_count: int = 10,
    min_report: int = 8,
    tail_tol: float = TAIL_TOL,
) -> tuple:
    """The part of the default geometric sequence 0.5**k usable on this grid:
    each eta must leave at least ``min_report`` reportable samples."""
    if n is None:
        n = f.degree
    out = []
    for k in range(1, max_count + 1):
        eta = 0.5 ** k
        try:
            keep = _report_samples(f, eta, n, tail_tol)
        except TruncationError:
            break
        if keep < min_report:
            break
        out.append(eta)
    if len(out) < 2:
        raise TruncationError(
            f"grid [0, {f.t_max}] supports fewer than two eta values at degree {n}"
        )
    return tuple(out)


# ---------------------------------------------------------------------------
# holomorphic handles and Laurent machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalHandle:
    """Scalar rational function in partial-fraction form: a polynomial part
    plus sum_j sum_o c_{j,o} / (z - p_j)^o. Evaluable anywhere off its poles.
    """

    poles: tuple  # ((pole, (c_1, c_2, ..., c_ord)), ...)
    poly: tuple = ()  # ascending polynomial coefficients

    @classmethod
    def from_poles(cls, poles: dict, poly=()) -> "RationalHandle":
        packed = tuple(
            (complex(p), tuple(complex(c) for c in np.atleast_1d(cs)))
            for p, cs in poles.items()
        )
        return cls(poles=packed, poly=tuple(complex(c) for c in poly))

    def pole_locations(self) -> tuple:
        return tuple(p for p, _ in self.poles)

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        val = np.zeros_like(z)
        for k, c in enumerate(self.poly):
            val = val + c * z ** k
        for p, coeffs in self.poles:
            for order, c in enumerate(coeffs, start=1):
                if c != 0:
                    val = val + c / (z - p) ** order
        return val


@dataclass(frozen=True)
class LaplaceSignalHandle:
    """Laplace transform of an attached signal; evaluable for Re z > 0 only."""

    signal: SampledSignal
    degree: int

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        vals = np.array(
            [laplace_transform(self.signal, zi, self.degree) for zi in flat]
        )
        return vals.reshape(z.shape + (self.signal.dim,))


@dataclass(frozen=True)
class LaurentExpansion:
    """Contour-quadrature Laurent coefficients a_k around i*center_xi."""

    center_xi: float
    radius: float
    coefficients: dict
    quad_points: int

    def coefficient(self, k: int) -> complex:
        if k not in self.coefficients:
            raise MissingCoefficient(f"coefficient a_{k} was not computed")
        return self.coefficients[k]


def _laurent_raw(handle, xi, r, k_min, k_max, q):
    theta = 2.0 * math.pi * np.arange(q) / q
    z = 1j * xi + r * np.exp(1j * theta)
    vals = handle.evaluate(z)
    spectrum = np.fft.fft(vals) / q
    return {k: complex(r ** (-k) * spectrum[k % q]) for k in range(k_min, k_max + 1)}


def laurent_coefficients(
    handle: RationalHandle,
    xi: float,
    r: float,
    k_min: int,
    k_max: int,
    quad_points: int = 256,
) -> LaurentExpansion:
    """Laurent coefficients a_k = (2 pi i)^{-1} oint F(z) (z - i xi)^{-k-1} dz
    on the circle |z - i xi| = r, by trapezoidal (spectrally accurate)
    contour quadrature.

    Raises
    ------
    SingularityTooClose
        When doubling the node count moves any coefficient, which happens
        exactly when another singularity of F intrudes on the contour.
    """
    if quad_points < 64:
        raise DomainError("use at least 64 quadrature nodes")
    if r <= 0.0:
        raise DomainError("contour radius must be positive")
    if k_min > k_max:
        raise DomainError("empty coefficient range")
    if not isinstance(handle, RationalHandle):
        raise DomainError(
            "Laurent analysis is restricted to rational handles; transforms of "
            "signals are only class representatives off the imaginary axis"
        )
    for p in handle.pole_locations():
        if abs(abs(p - 1j * xi) - r) < 1e-12:
            raise SingularityTooClose(f"pole {p} sits on the contour")
    coarse = _laurent_raw(handle, xi, r, k_min, k_max, quad_points)
    fine = _laurent_raw(handle, xi, r, k_min, k_max, 2 * quad_points)
    scale = 1.0 + max(abs(v) for v in fine.values())
    drift = max(abs(coarse[k] - fine[k]) for k in fine)
    if drift > 1e-10 * scale:
        raise SingularityTooClose(
            f"coefficients moved by {drift:.2e} when doubling the nodes; "
            f"another singularity is within radius {r} of {xi}i"
        )
    return LaurentExpansion(
        center_xi=float(xi),
        radius=float(r),
        coefficients=coarse,
        quad_points=quad_points,
    )


def laurent_bound_residual(exp: LaurentExpansion, n_power: int, m_bound: float, k: int) -> float:
    """Left minus right side of the binomial coefficient bound

        || sum_{j<=N} C(N,j) r^{2N-2j} a_{k-2j} ||  <=  2^N M r^{N-k}

    for a function bounded by M/|Re z|^N off the imaginary axis. A
    satisfying instance yields a nonpositive value (up to quadrature slack).
    """
    r = exp.radius
    acc = 0.0 + 0.0j
    for j in range(n_power + 1):
        acc += math.comb(n_power, j) * r ** (2 * n_power - 2 * j) * exp.coefficient(k - 2 * j)
    lhs = abs(acc)
    rhs = 2.0 ** n_power * m_bound * r ** (n_power - k)
    return lhs - rhs


# ---------------------------------------------------------------------------
# singularity scan and ergodic means
# ---------------------------------------------------------------------------

class ScanPoint(NamedTuple):
    xi: float
    order: int
    slope: float


def singularity_scan(
    f: SampledSignal,
    n: int,
    xi_grid,
    eta_sequence=None,
    tail_tol: float = TAIL_TOL,
) -> list:
    """Heuristic scan for transform singularities on the imaginary axis.

    For each xi the norm of the truncated Laplace transform at eta + i*xi is
    fitted against eta**(-p) over the eta sequence; slopes steeper than -0.5
    are reported as singular with order round(-slope) clamped to [1, n+1].
    Order 0 marks points with no detected singularity. This is a documented
    heuristic, not a decision procedure.
    """
    if eta_sequence is None:
        eta_sequence = feasible_eta_sequence(f, n, max_count=6, tail_tol=tail_tol)
    etas = np.asarray(sorted(eta_sequence, reverse=True), dtype=float)
    if etas.size < 3:
        raise DomainError("need at least three eta values to fit an order")
    if np.any(etas <= 0.0) or np.any(etas > 1.0):
        raise DomainError("eta sequence must lie in (0, 1]")
    out = []
    log_eta = np.log(etas)
    for xi in np.asarray(xi_grid, dtype=float):
        norms = np.array(
            [
                np.linalg.norm(laplace_transform(f, eta + 1j * xi, n, tail_tol))
                for eta in etas
            ]
        )
        if np.any(norms < 1e-300):
            out.append(ScanPoint(float(xi), 0, 0.0))
            continue
        slope = float(np.polyfit(log_eta, np.log(norms), 1)[0])
        if slope <= -0.5:
            order = int(min(n + 1, max(1, round(-slope))))
        else:
            order = 0
        out.append(ScanPoint(float(xi), order, slope))
    return out


@dataclass(frozen=True)
class ErgodicDiagnostic:
    """Scaled resolvent norms along a decreasing eta sequence, with the
    extrapolated limit of the norms."""

    eta_values: tuple
    scaled_norms: tuple
    extrapolated_limit: float
    converged: bool

    @property
    def divergent(self) -> bool:
        v = self.scaled_norms
        if len(v) < 3:
            return False
        return v[-1] > v[-2] > v[-3] and v[-1] > 1.5 * v[0]


def extrapolate_limit(etas, norms) -> tuple:
    """Richardson-style limit of norms v(eta) ~ L + c*eta**p as eta -> 0,
    with p estimated from consecutive differences. Returns (limit, converged);
    converged means the last two norms differ by less than 1e-3."""
    v = [float(x) for x in norms]
    if len(v) == 1:
        return max(v[-1], 0.0), False
    converged = abs(v[-1] - v[-2]) < 1e-3
    limit = v[-1]
    d1 = v[-2] - v[-1]
    if len(v) >= 3 and abs(d1) > 1e-9 * max(1.0, abs(v[-1])):
        d0 = v[-3] - v[-2]
        ratio_eta = etas[-2] / etas[-1]
        if d0 * d1 > 0.0 and ratio_eta > 1.0:
            q = d0 / d1
            if q > 1.05:
                p = math.log(q) / math.log(ratio_eta)
                p = min(max(p, 0.05), 4.0)
                limit = v[-1] - d1 / (ratio_eta ** p - 1.0)
    return max(limit, 0.0), converged


def ergodic_mean_signal(
    f: SampledSignal,
    n: int,
    zeta: float,
    eta_sequence=None,
    tail_tol: float = TAIL_TOL,
) -> tuple:
    """Scaled resolvent iterates eta * y_eta with y_eta the resolvent of f at
    eta + i*zeta, along a decreasing eta sequence.

    Returns (last iterate as a signal, ErgodicDiagnostic). A zero
    extrapolated limit indicates the mean of f at frequency zeta vanishes.
    """
    if eta_sequence is None:
        eta_sequence = feasible_eta_sequence(f, n, tail_tol=tail_tol)
    etas = sorted((float(e) for e in eta_sequence), reverse=True)
    if not etas or etas[0] > 1.0 or etas[-1] <= 0.0:
        raise DomainError("eta sequence must be a decreasing subset of (0, 1]")
    norms = []
    last = None
    for eta in etas:
        y = resolvent_apply(f, eta + 1j * zeta, n, tail_tol)
        last = eta * y
        norms.append(weighted_norm(last, n))
    limit, converged = extrapolate_limit(etas, norms)
    diag = ErgodicDiagnostic(
        eta_values=tuple(etas),
        scaled_norms=tuple(norms),
        extrapolated_limit=limit,
        converged=converged,
    )
    return last, diag
