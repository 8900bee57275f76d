"""Riemann-Liouville integration and Caputo differentiation on sampled
signals, by product quadrature that absorbs the weakly singular kernel
analytically (the kernel is never evaluated at 0)."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, TooFewPoints
from .signals import SampledSignal


def _check_order(alpha: float):
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"fractional order must lie in (0, 1], got {alpha}")


def product_trapezoid_weights(alpha: float, steps: int, dt: float):
    """Convolution weights of the product-trapezoidal rule for the kernel
    t**(alpha-1)/Gamma(alpha).

    Returns arrays (A, B), both of length ``steps``, such that

        integral_0^{t_j} g_a(t_j - s) f(s) ds
            ~= sum_{m=1..j} A[m-1] * f_{j-m} + B[m-1] * f_{j-m+1},

    exactly whenever f is piecewise linear on the grid.
    """
    if steps < 1:
        raise TooFewPoints("need at least one interval")
    m = np.arange(steps + 1, dtype=float)
    x = m * dt
    # primitives of g_a and of t*g_a
    g1 = x ** alpha / math.gamma(alpha + 1.0)
    g2 = x ** (alpha + 1.0) / ((alpha + 1.0) * math.gamma(alpha))
    dg1 = np.diff(g1)
    dg2 = np.diff(g2)
    left = x[:-1]
    a = (dg2 - left * dg1) / dt
    b = ((left + dt) * dg1 - dg2) / dt
    return a, b


def fractional_integral(f: SampledSignal, alpha: float) -> SampledSignal:
    """Riemann-Liouville integral of order ``alpha`` on the signal's grid.

    The value at t = 0 is 0. Exact for piecewise-linear signals.
    """
    _check_order(alpha)
    n = f.nsamples - 1
    if n < 1:
        raise TooFewPoints("cannot integrate a single sample")
    a, b = product_trapezoid_weights(alpha, n, f.dt)
    a_kernel = np.concatenate([[0.0], a])
    out = np.zeros_like(f.values)
    for col in range(f.dim):
        vals = f.values[:, col]
        term1 = np.convolve(vals, a_kernel)[: n + 1]
        term2 = np.concatenate([[0.0], np.convolve(vals[1:], b)[:n]])
        out[:, col] = term1 + term2
    return f.with_values(out)


def finite_difference(f: SampledSignal) -> SampledSignal:
    """Second-order finite-difference derivative (one-sided at the ends)."""
    if f.nsamples < 3:
        raise TooFewPoints("need at least three samples to difference")
    der = np.gradient(f.values, f.dt, axis=0, edge_order=2)
    return f.with_values(der)


def caputo_derivative(f: SampledSignal, alpha: float) -> SampledSignal:
    """Caputo derivative: fractional integral of order 1 - alpha of f',
    with f' by second-order finite differences; the plain derivative when
    alpha = 1. Vanishes on constants."""
    _check_order(alpha)
    der = finite_difference(f)
    if alpha == 1.0:
        return der
    return fractional_integral(der, 1.0 - alpha)
