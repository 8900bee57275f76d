"""Figure rendering for the scenario report path: the weighted decay
profile, the boundary spectrum and the ergodic diagnostics, written as PNG
files alongside the delimited output."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .weighted import weighted_values


def render_decay(path, scenario, verdict):
    u = verdict.solution
    n = scenario.degree
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    w = weighted_values(u, n)
    ax.semilogy(u.times, np.maximum(w, 1e-300), lw=1.0, label=rf"$\|u(t)\|/(1+t)^{{{n}}}$")
    starts = [s for s, _ in verdict.decay.window_sups]
    sups = [v for _, v in verdict.decay.window_sups]
    ax.plot(starts, np.maximum(sups, 1e-300), "o", ms=5, color="C1", label="window sups")
    ax.axhline(verdict.decay.tolerance, color="C3", ls="--", lw=0.8, label="tolerance")
    ax.set_xlabel("t")
    ax.set_title(f"{scenario.name}: decay verdict {verdict.decay.verdict.value}")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_spectrum(path, scenario, verdict):
    fig, ax = plt.subplots(figsize=(6.4, 2.8))
    eigs = scenario.operator.eigenvalues
    ax.plot(eigs.real, eigs.imag, "x", ms=7, color="0.4", label="eigenvalues of A")
    for p in verdict.report.boundary_spectrum:
        color = "C3" if p.reason.value == "EigenvalueHit" else "C0"
        ax.plot([0.0], [p.xi], "o", ms=6, color=color)
        ax.annotate(
            f"{p.xi:g} ({p.reason.value})",
            (0.0, p.xi),
            textcoords="offset points",
            xytext=(8, 0),
            fontsize=7,
        )
    ax.axvline(0.0, color="0.8", lw=0.8)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(f"{scenario.name}: boundary spectrum (as i*xi) and eigenvalues")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_ergodic(path, scenario, verdict):
    pairs = verdict.report.ergodic_results
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if not pairs:
        ax.text(0.5, 0.5, "empty boundary spectrum", ha="center", va="center")
    for k, pair in enumerate(pairs):
        color = f"C{k % 10}"
        ax.loglog(
            pair.operator.eta_values,
            np.maximum(pair.operator.scaled_norms, 1e-300),
            "o-",
            color=color,
            lw=1.0,
            label=rf"$\xi$={pair.xi:g} operator",
        )
        if pair.signal is not None:
            ax.loglog(
                pair.signal.eta_values,
                np.maximum(pair.signal.scaled_norms, 1e-300),
                "s--",
                color=color,
                lw=1.0,
                label=rf"$\xi$={pair.xi:g} signal",
            )
    ax.set_xlabel(r"$\eta$")
    ax.set_ylabel("scaled resolvent norm")
    ax.set_title(f"{scenario.name}: ergodic means along eta")
    if pairs:
        ax.legend(loc="best", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_all(out_dir, scenario, verdict):
    render_decay(os.path.join(out_dir, "decay.png"), scenario, verdict)
    render_spectrum(os.path.join(out_dir, "spectrum.png"), scenario, verdict)
    render_ergodic(os.path.join(out_dir, "ergodic.png"), scenario, verdict)
