"""Polynomially weighted norms, the translation semigroup and the decay
detector for the class of signals whose weighted values vanish at infinity."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TooFewPoints
from .signals import SampledSignal


class Verdict(enum.Enum):
    DECAYED = "Decayed"
    NOT_DECAYED = "NotDecayed"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DecayReport:
    """Windowed tail behaviour of a weighted signal magnitude.

    ``verdict`` is Decayed only when the final window supremum is below the
    tolerance and the last three windows show a majority-decreasing trend.
    """

    window_sups: tuple
    verdict: Verdict
    tail_estimate: float
    tolerance: float

    def decayed(self) -> bool:
        return self.verdict is Verdict.DECAYED


def weighted_values(f: SampledSignal, n: int) -> np.ndarray:
    """Pointwise ||f(t_j)|| / (1+t_j)**n."""
    return f.magnitudes() / (1.0 + f.times) ** n


def weighted_norm(f: SampledSignal, n: int) -> float:
    """Grid supremum of ||f(t)|| / (1+t)**n (Euclidean vector norm)."""
    return float(np.max(weighted_values(f, n)))


def continuity_modulus(f: SampledSignal, n: int, h: float) -> float:
    """sup_j ||f(t_j + h) - f(t_j)|| / (1+t_j)**n over the grid.

    ``h`` is rounded to the nearest grid multiple; a warning reports the
    rounded value when it differs. The supremum runs over indices for which
    t_j + h is still on the grid.
    """
    k = int(round(h / f.dt))
    if k == 0:
        raise DomainError(f"shift {h} rounds to zero grid steps of {f.dt}")
    if k >= f.nsamples:
        raise DomainError(f"shift {h} exceeds the grid span {f.t_max}")
    if abs(k * f.dt - h) > 1e-9 * max(h, f.dt):
        warnings.warn(f"shift rounded to the grid: h = {k * f.dt!r}", stacklevel=2)
    diff = f.values[k:] - f.values[:-k]
    t = f.times[: f.nsamples - k]
    return float(np.max(np.linalg.norm(diff, axis=1) / (1.0 + t) ** n))


def translate(f: SampledSignal, t_shift: float) -> SampledSignal:
    """Left translation f(t_shift + .); the result is shorter by
    t_shift/dt samples. t_shift must be a grid multiple."""
    k = int(round(t_shift / f.dt))
    if abs(k * f.dt - t_shift) > 1e-9 * max(abs(t_shift), f.dt):
        raise DomainError(f"shift {t_shift} is not a multiple of dt = {f.dt}")
    if k < 0 or k >= f.nsamples:
        raise DomainError(f"shift {t_shift} outside the grid span {f.t_max}")
    return f.with_values(f.values[k:])


def _majority_decreasing(sups, tolerance: float) -> bool:
    """Majority-decreasing trend across the last three windows.

    A step counts as decreasing also when both values are already tiny
    relative to the tolerance (a flat zero tail is a decayed tail).
    """
    last = sups[-3:]
    if len(last) < 2:
        return False
    tiny = tolerance * 1e-6
    pairs = [(a, b) for i, a in enumerate(last) for b in last[i + 1 :]]
    good = sum(1 for a, b in pairs if b < a * (1.0 - 1e-12) or b < tiny)
    return 2 * good >= len(pairs) + 1


def decay_profile(
    f: SampledSignal,
    n: int,
    window_count: int = 5,
    decay_tolerance: float = 1e-2,
    tail_fraction: float = 0.5,
) -> DecayReport:
    """Windowed verdict on whether ||f(t)||/(1+t)**n tends to zero.

    The grid tail (the last ``tail_fraction`` of the span) is split into
    ``window_count`` windows and each window's weighted supremum recorded.
    Decayed: final sup below tolerance with a decreasing trend. Inconclusive:
    the tail is still shrinking, or it is non-monotone but within 10x the
    tolerance. NotDecayed otherwise (stagnant or growing above tolerance).
    """
    if window_count < 3:
        raise DomainError("need at least three windows")
    w = weighted_values(f, n)
    start = int(f.nsamples * (1.0 - tail_fraction))
    tail = w[start:]
    if tail.size < 2 * window_count:
        raise TooFewPoints(
            f"{tail.size} tail samples cannot fill {window_count} windows"
        )
    edges = np.linspace(0, tail.size, window_count + 1).astype(int)
    sups = tuple(float(np.max(tail[a:b])) for a, b in zip(edges[:-1], edges[1:]))
    starts = tuple(float((start + a) * f.dt) for a in edges[:-1])
    final = sups[-1]
    trend = _majority_decreasing(sups, decay_tolerance)
    if final < decay_tolerance and trend:
        verdict = Verdict.DECAYED
    elif trend or final < 10.0 * decay_tolerance:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.NOT_DECAYED
    return DecayReport(
        window_sups=tuple(zip(starts, sups)),
        verdict=verdict,
        tail_estimate=final,
        tolerance=decay_tolerance,
    )
