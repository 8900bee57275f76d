"""Mild solutions of D^alpha u = A u + f for matrix A.

Two independent routes validate each other: a spectral route through the
Mittag-Leffler resolvent family (diagonalizable A only) and a fractional
Adams predictor-corrector time stepper (any A, including defective ones).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import GridMismatch, ResidualTooLarge, StepSizeTooLarge, TooFewPoints
from .fractional import fractional_integral, product_trapezoid_weights
from .operators import OperatorModel
from .scenario import Scenario
from .signals import SampledSignal
from .special import mittag_leffler_array
from .weighted import weighted_values


def resolvent_family(op: OperatorModel, alpha: float, t: float) -> np.ndarray:
    """The solution operator at time t: E_alpha(t**alpha A) through the
    eigendecomposition; the matrix exponential when alpha = 1. Identity at 0."""
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    if t == 0.0:
        return np.eye(op.dimension, dtype=complex)
    op.require_diagonalizable()
    z = (t ** alpha) * op.eigenvalues
    e = mittag_leffler_array(alpha, 1.0, z)
    v = op.eigenvectors
    return (v * e) @ np.linalg.inv(v)


def _modal_solution(op: OperatorModel, alpha: float, scenario: Scenario):
    """Per-eigenmode homogeneous values and forcing convolution weights."""
    times = scenario.times
    n_steps = scenario.steps
    dt = scenario.dt
    v = op.eigenvectors
    vinv = np.linalg.inv(v)
    w0 = vinv @ scenario.x0
    f = scenario.forcing_signal()
    g = f.values @ vinv.T  # modal forcing, column i = mode i
    talpha = times ** alpha
    modal = np.empty((n_steps + 1, op.dimension), dtype=complex)
    for i, mu in enumerate(op.eigenvalues):
        z = talpha * mu
        hom = mittag_leffler_array(alpha, 1.0, z) * w0[i]
        if scenario.forcing.kind == "zero":
            modal[:, i] = hom
            continue
        # product integration of int_0^t (t-s)^{a-1} E_{a,a}((t-s)^a mu) g(s) ds:
        # cell moments come from the exact primitives
        #   G0(x) = x^a E_{a,a+1}(x^a mu),  H(x) = x^{a+1} (E_{a,a+1} - E_{a,a+2})(x^a mu)
        e1 = mittag_leffler_array(alpha, alpha + 1.0, z)
        e2 = mittag_leffler_array(alpha, alpha + 2.0, z)
        g0 = times ** alpha * e1
        h = times ** (alpha + 1.0) * (e1 - e2)
        i0 = np.diff(g0)
        i1 = np.diff(h)
        left = times[:-1]
        p = (i1 - left * i0) / dt  # weight of the older sample g_{j-m}
        q = i0 - p  # weight of the newer sample g_{j-m+1}
        gi = g[:, i]
        conv_old = np.convolve(gi, np.concatenate([[0.0], p]))[: n_steps + 1]
        conv_new = np.concatenate([[0.0], np.convolve(gi[1:], q)[:n_steps]])
        modal[:, i] = hom + conv_old + conv_new
    return modal @ v.T


def solve_forced(scenario: Scenario) -> SampledSignal:
    """Spectral-route mild solution on the scenario grid.

    The result is checked against the integrated equation before being
    returned; a residual above the scenario tolerance raises.
    """
    scenario.operator.require_diagonalizable()
    values = _modal_solution(scenario.operator, scenario.alpha, scenario)
    u = SampledSignal(dt=scenario.dt, values=values, degree=scenario.degree)
    res = mild_residual(u, scenario)
    if not res <= scenario.tolerances.residual:
        raise ResidualTooLarge(
            f"spectral solution residual {res:.3e} exceeds "
            f"{scenario.tolerances.residual:.3e}"
        )
    return u


def solve_adams(scenario: Scenario, corrector_sweeps: int = 2) -> SampledSignal:
    """Fractional Adams predictor-corrector for u = x0 + J^alpha (A u + f).

    Product-rectangle predictor, product-trapezoid corrector; handles
    defective matrices. Raises StepSizeTooLarge when the corrector cannot
    contract (||A|| dt^alpha / Gamma(1+alpha) >= 1).
    """
    alpha = scenario.alpha
    a_mat = scenario.operator.matrix
    dt = scenario.dt
    n_steps = scenario.steps
    if n_steps < 1:
        raise TooFewPoints("nothing to step")
    anorm = float(np.linalg.norm(a_mat, 2))
    contraction = anorm * dt ** alpha / math.gamma(1.0 + alpha)
    if contraction >= 1.0:
        raise StepSizeTooLarge(
            f"||A|| dt^alpha / Gamma(1+alpha) = {contraction:.3f} >= 1"
        )
    f = scenario.forcing_signal().values
    # rectangle weights: int over cell m of g_alpha
    m = np.arange(n_steps + 1, dtype=float)
    g1 = (m * dt) ** alpha / math.gamma(alpha + 1.0)
    rect = np.diff(g1)  # rect[m-1] = weight of the cell [t_{m-1}, t_m]
    trap_a, trap_b = product_trapezoid_weights(alpha, n_steps, dt)
    rev_rect = rect[::-1]
    rev_a = trap_a[::-1]
    rev_b = trap_b[::-1]
    u = np.empty((n_steps + 1, scenario.operator.dimension), dtype=complex)
    u[0] = scenario.x0
    rhs = np.empty_like(u)
    rhs[0] = u[0] @ a_mat.T + f[0]
    tail_new = trap_b[0]
    for j in range(1, n_steps + 1):
        hist = rhs[:j]
        # predictor: left-rectangle product integration of the history
        pred = u[0] + (rev_rect[n_steps - j :, None] * hist).sum(axis=0)
        cur = pred @ a_mat.T + f[j]
        # corrector: product trapezoid with the predicted endpoint
        base = u[0] + (rev_a[n_steps - j :, None] * hist).sum(axis=0)
        if j >= 2:
            base += (rev_b[n_steps - j : n_steps - 1, None] * hist[1:]).sum(axis=0)
        for _ in range(corrector_sweeps):
            u_j = base + tail_new * cur
            cur = u_j @ a_mat.T + f[j]
        u[j] = u_j
        rhs[j] = cur
    return SampledSignal(dt=dt, values=u, degree=scenario.degree)


def solve(scenario: Scenario) -> SampledSignal:
    """Spectral route when available, Adams fallback when configured."""
    if scenario.operator.diagonalizable:
        return solve_forced(scenario)
    if not scenario.adams_fallback:
        scenario.operator.require_diagonalizable()
    return solve_adams(scenario)


def mild_residual(u: SampledSignal, scenario: Scenario) -> float:
    """Weighted supremum of u - A J^alpha u - J^alpha f - x0 on the grid."""
    if u.nsamples != scenario.steps + 1 or abs(u.dt - scenario.dt) > 1e-12 * scenario.dt:
        from .errors import GridMismatch

        raise GridMismatch("solution is not on the scenario grid")
    ju = fractional_integral(u, scenario.alpha)
    jf = fractional_integral(scenario.forcing_signal(), scenario.alpha)
    defect = u.values - ju.values @ scenario.operator.matrix.T - jf.values - scenario.x0[None, :]
    sig = SampledSignal(dt=u.dt, values=defect, degree=scenario.degree)
    return float(np.max(weighted_values(sig, scenario.degree)))
