"""Experiment descriptions: the operator, order, weight degree, initial
value, forcing, grid and tolerances, plus the flat key-value config format.

Config files are flat ``key = value`` lines (``#`` comments allowed):

    alpha = 0.5
    degree = 0
    matrix = "-1:0"              # row-major re:im pairs, ';' between rows
    x0 = "1:0"
    forcing.kind = "zero"        # zero | exp_decay | sinusoid | custom_csv
    forcing.rate = 1.0           # exp_decay only
    forcing.xi = 1.0             # sinusoid only
    forcing.vector = "1:0"       # forcing direction
    forcing.path = "f.csv"       # custom_csv only
    grid.t_max = 400.0
    grid.steps = 4000
    tol.decay = 0.05
    tol.residual = 0.05
    tol.ergodic = 0.2
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from importlib import resources

import numpy as np

from .errors import ConfigError, DomainError, GridMismatch
from .operators import OperatorModel
from .signals import SampledSignal

DEFAULT_DECAY_TOL = 1e-2
DEFAULT_RESIDUAL_TOL = 1e-3
DEFAULT_ERGODIC_TOL = 1e-2


@dataclass(frozen=True)
class Forcing:
    """Right-hand side description. Kinds: zero, exp_decay (vector * e^{-rate t}),
    sinusoid (vector * e^{i xi t}), custom_csv (a signal file on the scenario grid)."""

    kind: str = "zero"
    rate: float = 1.0
    xi: float = 0.0
    vector: np.ndarray | None = None
    path: str | None = None

    def sample(self, times: np.ndarray, dim: int) -> np.ndarray:
        if self.kind == "zero":
            return np.zeros((times.size, dim), dtype=complex)
        if self.kind == "exp_decay":
            v = self._vector(dim)
            return np.exp(-self.rate * times)[:, None] * v[None, :]
        if self.kind == "sinusoid":
            v = self._vector(dim)
            return np.exp(1j * self.xi * times)[:, None] * v[None, :]
        if self.kind == "custom_csv":
            from .io import read_signal_csv

            sig = read_signal_csv(self.path)
            if sig.nsamples != times.size or sig.dim != dim or (
                times.size > 1 and abs(sig.dt - (times[1] - times[0])) > 1e-9 * sig.dt
            ):
                raise GridMismatch(f"forcing file {self.path} is not on the scenario grid")
            return sig.values
        raise ConfigError(f"unknown forcing kind {self.kind!r}")

    def _vector(self, dim: int) -> np.ndarray:
        if self.vector is None:
            v = np.zeros(dim, dtype=complex)
            v[0] = 1.0
            return v
        v = np.asarray(self.vector, dtype=complex).reshape(-1)
        if v.size != dim:
            raise ConfigError(f"forcing vector has dimension {v.size}, expected {dim}")
        return v


@dataclass(frozen=True)
class Tolerances:
    decay: float = DEFAULT_DECAY_TOL
    residual: float = DEFAULT_RESIDUAL_TOL
    ergodic: float = DEFAULT_ERGODIC_TOL


@dataclass(frozen=True)
class Scenario:
    """A full experiment: D^alpha u = A u + f, u(0) = x0, judged with weight
    degree n on [0, t_max] with the given tolerances."""

    operator: OperatorModel
    alpha: float
    degree: int
    x0: np.ndarray
    forcing: Forcing = field(default_factory=Forcing)
    t_max: float = 10.0
    steps: int = 1000
    tolerances: Tolerances = field(default_factory=Tolerances)
    name: str = "scenario"
    adams_fallback: bool = True

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"order must lie in (0, 1], got {self.alpha}")
        if self.degree < 0:
            raise DomainError("weight degree must be nonnegative")
        x0 = np.asarray(self.x0, dtype=complex).reshape(-1)
        if x0.size != self.operator.dimension:
            raise ConfigError(
                f"x0 has dimension {x0.size}, operator is {self.operator.dimension}x"
                f"{self.operator.dimension}"
            )
        object.__setattr__(self, "x0", x0)
        if self.t_max <= 0 or self.steps < 2:
            raise ConfigError("grid needs t_max > 0 and at least two steps")

    @property
    def dt(self) -> float:
        return self.t_max / self.steps

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.steps + 1) * self.dt

    def forcing_signal(self) -> SampledSignal:
        vals = self.forcing.sample(self.times, self.operator.dimension)
        return SampledSignal(dt=self.dt, values=vals, degree=self.degree)

    def with_grid(self, t_max: float, steps: int) -> "Scenario":
        return replace(self, t_max=t_max, steps=steps)


# ---------------------------------------------------------------------------
# flat key-value config parsing
# ---------------------------------------------------------------------------

def _strip_quotes(v: str) -> str:
    v = v.strip()
    if len(v) >= 2 and v[0] == v[-1] and v[0] in "\"'":
        return v[1:-1]
    return v


def parse_complex_pair(tok: str) -> complex:
    tok = tok.strip()
    if ":" not in tok:
        return complex(float(tok), 0.0)
    re_s, im_s = tok.split(":")
    return complex(float(re_s), float(im_s))


def parse_vector(text: str) -> np.ndarray:
    return np.array([parse_complex_pair(t) for t in text.split(",") if t.strip()])


def parse_matrix(text: str) -> np.ndarray:
    rows = [parse_vector(r) for r in text.split(";") if r.strip()]
    if not rows or any(r.size != len(rows) for r in rows):
        raise ConfigError(f"matrix spec {text!r} is not square")
    return np.stack(rows)


def read_flat_config(path) -> dict:
    """Parse ``key = value`` lines into a flat dict of strings."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for ln, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{ln}: expected 'key = value'")
            key, _, value = stripped.partition("=")
            value = value.split("#", 1)[0]
            out[key.strip()] = _strip_quotes(value)
    return out


def scenario_from_config(path) -> Scenario:
    raw = read_flat_config(path)

    def need(key):
        if key not in raw:
            raise ConfigError(f"{path}: missing required key {key!r}")
        return raw[key]

    try:
        matrix = parse_matrix(need("matrix"))
        operator = OperatorModel(matrix)
        alpha = float(need("alpha"))
        degree = int(raw.get("degree", "0"))
        x0 = parse_vector(need("x0"))
        kind = raw.get("forcing.kind", "zero").lower()
        forcing = Forcing(
            kind=kind,
            rate=float(raw.get("forcing.rate", "1.0")),
            xi=float(raw.get("forcing.xi", "0.0")),
            vector=parse_vector(raw["forcing.vector"]) if "forcing.vector" in raw else None,
            path=_resolve_relative(path, raw.get("forcing.path")),
        )
        tol = Tolerances(
            decay=float(raw.get("tol.decay", DEFAULT_DECAY_TOL)),
            residual=float(raw.get("tol.residual", DEFAULT_RESIDUAL_TOL)),
            ergodic=float(raw.get("tol.ergodic", DEFAULT_ERGODIC_TOL)),
        )
        scenario = Scenario(
            operator=operator,
            alpha=alpha,
            degree=degree,
            x0=x0,
            forcing=forcing,
            t_max=float(need("grid.t_max")),
            steps=int(need("grid.steps")),
            tolerances=tol,
            name=os.path.splitext(os.path.basename(os.fspath(path)))[0],
        )
    except (ValueError, DomainError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return scenario


def _resolve_relative(config_path, maybe_path):
    if maybe_path is None:
        return None
    if os.path.isabs(maybe_path):
        return maybe_path
    return os.path.join(os.path.dirname(os.path.abspath(os.fspath(config_path))), maybe_path)


def bundled_scenario_path(name: str):
    """Filesystem path of a scenario shipped with the package."""
    if not name.endswith(".toml"):
        name = name + ".toml"
    ref = resources.files("fracspec").joinpath("scenarios", name)
    if not ref.is_file():
        raise ConfigError(f"no bundled scenario named {name!r}")
    return ref
