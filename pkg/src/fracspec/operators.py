"""Finite-dimensional operator models: boundary spectral set of the
fractional resolvent, the resolvent itself and operator-level ergodic means."""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchCutViolation, DefectiveMatrix, DomainError, SingularMatrix
from .halfline import ErgodicDiagnostic, extrapolate_limit
from .special import principal_power

log = logging.getLogger(__name__)

#: eigenvector condition number above which a warning is emitted
COND_WARN = 1e8
#: eigenvector condition number above which the matrix is treated as defective
COND_DEFECTIVE = 1e12

DEFAULT_ETA_SEQUENCE = tuple(0.5 ** k for k in range(1, 11))


class OperatorModel:
    """A square complex matrix with a cached spectral decomposition."""

    def __init__(self, matrix):
        m = np.atleast_2d(np.asarray(matrix, dtype=complex))
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError(f"operator must be a square matrix, got shape {m.shape}")
        self.matrix = m
        self.dimension = m.shape[0]
        w, v = np.linalg.eig(m)
        self.eigenvalues = w
        self.eigenvectors = v
        try:
            self.eigen_condition = float(np.linalg.cond(v))
        except np.linalg.LinAlgError:  # pragma: no cover
            self.eigen_condition = math.inf
        self.diagonalizable = (
            np.isfinite(self.eigen_condition) and self.eigen_condition < COND_DEFECTIVE
        )
        if self.diagonalizable and self.eigen_condition > COND_WARN:
            log.warning(
                "eigenvector basis is badly conditioned (%.2e); spectral "
                "routes may lose accuracy",
                self.eigen_condition,
            )

    def require_diagonalizable(self):
        if not self.diagonalizable:
            raise DefectiveMatrix(
                "matrix is not (numerically) diagonalizable; "
                "use the time-stepping route"
            )

    def spectral_projection(self, eigenvalue: complex, tol: float = 1e-8) -> np.ndarray:
        """Projection onto the (semisimple) eigenspace of ``eigenvalue``."""
        self.require_diagonalizable()
        sel = np.abs(self.eigenvalues - eigenvalue) <= tol * (1.0 + abs(eigenvalue))
        if not sel.any():
            raise DomainError(f"{eigenvalue} is not an eigenvalue")
        d = np.where(sel, 1.0 + 0.0j, 0.0)
        return (self.eigenvectors * d) @ np.linalg.inv(self.eigenvectors)

    def __repr__(self):
        return f"OperatorModel(dim={self.dimension}, eigenvalues={self.eigenvalues})"


class BoundaryReason(enum.Enum):
    EIGENVALUE_HIT = "EigenvalueHit"
    BRANCH_POINT = "BranchPoint"


@dataclass(frozen=True)
class BoundaryPoint:
    xi: float
    reason: BoundaryReason


@dataclass(frozen=True)
class BoundarySpectrum:
    """Real frequencies xi at which the fractional resolvent fails to be
    analytic around i*xi. Finite for matrices, hence countable."""

    points: tuple

    def frequencies(self) -> tuple:
        return tuple(p.xi for p in self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _check_order(alpha: float):
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"fractional order must lie in (0, 1], got {alpha}")


def boundary_spectrum(op: OperatorModel, alpha: float, match_tol: float = 1e-8) -> BoundarySpectrum:
    """Solve (i xi)**alpha in spectrum(A) for real xi, tagging hits, and add
    xi = 0 as a branch point whenever alpha < 1 (the power has a branch point
    at 0) or when alpha = 1 and 0 is an eigenvalue."""
    _check_order(alpha)
    hits = []
    for mu in op.eigenvalues:
        if abs(mu) < match_tol:
            continue
        r = abs(mu) ** (1.0 / alpha)
        for xi in (r, -r):
            power = principal_power(1j * xi, alpha)
            if abs(power - mu) <= match_tol * (1.0 + abs(mu)):
                hits.append(float(xi))
    zero_is_eigen = bool(np.min(np.abs(op.eigenvalues)) < match_tol)
    points = []
    if alpha < 1.0 or (alpha == 1.0 and zero_is_eigen):
        points.append(BoundaryPoint(0.0, BoundaryReason.BRANCH_POINT))
    dedup = []
    for xi in sorted(hits):
        if dedup and abs(xi - dedup[-1]) < 1e-9 * (1.0 + abs(xi)):
            continue
        dedup.append(xi)
    points.extend(BoundaryPoint(xi, BoundaryReason.EIGENVALUE_HIT) for xi in dedup)
    points.sort(key=lambda p: p.xi)
    return BoundarySpectrum(points=tuple(points))


def fractional_resolvent(op: OperatorModel, alpha: float, lam: complex) -> np.ndarray:
    """lam**(alpha-1) (lam**alpha I - A)^{-1} by direct linear solve.

    Raises BranchCutViolation off the power branch and SingularMatrix when
    lam**alpha hits the spectrum (within 1e-12).
    """
    _check_order(alpha)
    lam = complex(lam)
    za = principal_power(lam, alpha)  # raises BranchCutViolation on the cut
    if np.min(np.abs(za - op.eigenvalues)) < 1e-12 * (1.0 + abs(za)):
        raise SingularMatrix(f"lambda**alpha = {za} lies in the spectrum")
    shifted = za * np.eye(op.dimension) - op.matrix
    return principal_power(lam, alpha - 1.0) * np.linalg.inv(shifted)


def ergodic_mean_operator(
    op: OperatorModel,
    alpha: float,
    zeta: float,
    x: np.ndarray,
    eta_sequence=DEFAULT_ETA_SEQUENCE,
    side: int = +1,
) -> tuple:
    """Scaled resolvent iterates eta * R_alpha(eta + i zeta, A) x along a
    decreasing positive eta sequence, approaching the axis from Re > 0.

    ``side=-1`` approaches from Re < 0 instead; for zeta = 0 and alpha < 1
    that path crosses the power branch cut and raises BranchCutViolation.
    Returns (last iterate, ErgodicDiagnostic on the Euclidean norms).
    """
    _check_order(alpha)
    if side not in (+1, -1):
        raise DomainError("side must be +1 or -1")
    x = np.asarray(x, dtype=complex).reshape(op.dimension)
    etas = sorted((float(e) for e in eta_sequence), reverse=True)
    if not etas or etas[-1] <= 0.0:
        raise DomainError("eta sequence must be positive")
    norms = []
    last = None
    for eta in etas:
        lam = side * eta + 1j * zeta
        r = fractional_resolvent(op, alpha, lam)
        last = eta * (r @ x)
        norms.append(float(np.linalg.norm(last)))
    limit, converged = extrapolate_limit(etas, norms)
    diag = ErgodicDiagnostic(
        eta_values=tuple(etas),
        scaled_norms=tuple(norms),
        extrapolated_limit=limit,
        converged=converged,
    )
    return last, diag
