"""CSV serialization of signals and spectra, and atomic file writes."""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .errors import GridError
from .operators import BoundarySpectrum
from .signals import SampledSignal


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def signal_header(dim: int) -> str:
    cols = ["t"]
    for k in range(dim):
        cols += [f"re_{k}", f"im_{k}"]
    return ",".join(cols)


def write_signal_csv(path, signal: SampledSignal):
    """Columns t, re_0, im_0, ..., re_{d-1}, im_{d-1}; 17 significant digits."""
    lines = [signal_header(signal.dim)]
    t = signal.times
    for j in range(signal.nsamples):
        row = [_fmt(t[j])]
        for k in range(signal.dim):
            v = signal.values[j, k]
            row += [_fmt(v.real), _fmt(v.imag)]
        lines.append(",".join(row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_signal_csv(path, degree: int = 0) -> SampledSignal:
    """Read a signal written by :func:`write_signal_csv` (header optional)."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("t,"):
                continue
            rows.append([float(tok) for tok in line.split(",")])
    if not rows:
        raise GridError(f"{path}: no samples")
    arr = np.asarray(rows, dtype=float)
    if arr.shape[1] % 2 != 1:
        raise GridError(f"{path}: expected columns t, re_0, im_0, ...")
    t = arr[:, 0]
    if len(t) < 2:
        raise GridError(f"{path}: need at least two samples")
    dt = t[1] - t[0]
    if abs(t[0]) > 1e-9 or dt <= 0:
        raise GridError(f"{path}: grid must start at 0 and increase")
    if np.max(np.abs(np.diff(t) - dt)) > 1e-6 * dt:
        raise GridError(f"{path}: grid is not uniform")
    values = arr[:, 1::2] + 1j * arr[:, 2::2]
    return SampledSignal(dt=dt, values=values, degree=degree)


def write_spectrum_csv(path, spectrum: BoundarySpectrum):
    lines = ["xi,reason"]
    for p in spectrum:
        lines.append(f"{_fmt(p.xi)},{p.reason.value}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def atomic_write_text(path, text: str):
    """Write-temp-then-rename so readers never see a partial file."""
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_json(path, payload):
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
