"""Shared test fixtures: independent oracles and randomized corpora."""

from __future__ import annotations

import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from fracspec.operators import OperatorModel
from fracspec.signals import SampledSignal


# ---------------------------------------------------------------------------
# high-precision series oracle for the Mittag-Leffler function
# ---------------------------------------------------------------------------

def ml_reference(alpha: float, beta: float, z: complex, digits: int = 25) -> complex:
    """Direct series summation with enough working precision to absorb the
    cancellation; independent of the package's evaluation regimes."""
    az = abs(z)
    if az > 1e-12:
        x = math.exp(math.log(az) / alpha)
        kstar = max(4.0, (x - beta) / alpha)
        logmax = kstar * math.log(az) - math.lgamma(alpha * kstar + beta)
    else:
        kstar, logmax = 8.0, 0.0
    cancel_digits = max(0, int(logmax / math.log(10)))
    if cancel_digits > 150:
        raise ValueError("oracle would be too slow; pick a tamer point")
    with mp.workdps(digits + cancel_digits + 10):
        # the Gamma argument must be formed in working precision: rounding
        # alpha*k in float64 costs ~psi(x)*x*eps relative per term, which the
        # cancellation then amplifies far above the target accuracy
        a = mp.mpf(alpha)
        b = mp.mpf(beta)
        zz = mp.mpc(z)
        s = mp.mpc(0)
        t = mp.mpc(1)
        k = 0
        while True:
            c = t / mp.gamma(a * k + b)
            s += c
            k += 1
            t *= zz
            if k > kstar and abs(c) < mp.mpf(10) ** (-(digits + 8)) * (1 + abs(s)):
                break
            if k > 100000:  # pragma: no cover
                raise RuntimeError("oracle did not converge")
        return complex(s)


def ml_half_reference(z: complex) -> complex:
    """E_{1/2,1}(z) = e^{z^2} erfc(-z) via the Faddeeva function (stable)."""
    from scipy.special import wofz

    return complex(wofz(-1j * complex(z)))


# ---------------------------------------------------------------------------
# randomized signal corpora
# ---------------------------------------------------------------------------

def smooth_signal(rng, t_max, steps, dim=1, degree=0, max_freq=1.5):
    """Polynomial-plus-sinusoid signal of exact weight degree, with its
    analytic derivative; both returned as SampledSignals."""
    t = np.arange(steps + 1) * (t_max / steps)
    vals = np.zeros((steps + 1, dim), dtype=complex)
    ders = np.zeros_like(vals)
    for c in range(dim):
        poly = np.zeros_like(t, dtype=complex)
        dpoly = np.zeros_like(t, dtype=complex)
        for k in range(degree + 1):
            a = (rng.standard_normal() + 1j * rng.standard_normal()) * 0.5 ** (degree - k)
            poly += a * (1.0 + t) ** k
            if k >= 1:
                dpoly += a * k * (1.0 + t) ** (k - 1)
        omega = rng.uniform(0.3, max_freq)
        b = 0.4 * (rng.standard_normal() + 1j * rng.standard_normal())
        osc = b * np.exp(1j * omega * t) * (1.0 + t) ** degree
        dosc = b * np.exp(1j * omega * t) * (
            1j * omega * (1.0 + t) ** degree
            + (degree * (1.0 + t) ** (degree - 1) if degree else 0.0)
        )
        vals[:, c] = poly + osc
        ders[:, c] = dpoly + dosc
    dt = t_max / steps
    return (
        SampledSignal(dt=dt, values=vals, degree=degree),
        SampledSignal(dt=dt, values=ders, degree=degree),
    )


def piecewise_linear_signal(rng, t_max, steps, dim=1, degree=0, knot_stride=16):
    """Random piecewise-linear signal with knots every ``knot_stride`` grid
    points; product-integration quadrature is exact on it."""
    t = np.arange(steps + 1) * (t_max / steps)
    knots = np.arange(0, steps + 1, knot_stride)
    if knots[-1] != steps:
        knots = np.append(knots, steps)
    vals = np.empty((steps + 1, dim), dtype=complex)
    for c in range(dim):
        kv = (rng.standard_normal(knots.size) + 1j * rng.standard_normal(knots.size))
        kv *= (1.0 + t[knots]) ** degree
        vals[:, c] = np.interp(t, t[knots], kv.real) + 1j * np.interp(t, t[knots], kv.imag)
    return SampledSignal(dt=t_max / steps, values=vals, degree=degree)


def random_diagonalizable(rng, dim, eigenvalues, max_cond=6.0):
    """Operator with prescribed eigenvalues and a well-conditioned (but not
    unitary) eigenbasis."""
    for _ in range(64):
        q, _ = np.linalg.qr(
            rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        )
        v = q + 0.25 * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
        if np.linalg.cond(v) <= max_cond:
            matrix = v @ np.diag(np.asarray(eigenvalues, complex)) @ np.linalg.inv(v)
            return OperatorModel(matrix)
    raise RuntimeError("could not draw a well-conditioned eigenbasis")


@pytest.fixture
def rng():
    return np.random.default_rng(987123654)
