"""Command line interface: solve | spectrum | scan | ergodic | verify | ml.

The ``verify`` report path writes u.csv, spectrum.csv and report.json, and
renders figures next to them unless ``--no-figures`` is given. The
FRACSPEC_THREADS environment variable caps how many scenarios run in
parallel when several configs are passed to ``verify``.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import FracspecError
from .halfline import ergodic_mean_signal, singularity_scan
from .io import read_signal_csv, write_signal_csv
from .lab import run_scenario
from .operators import boundary_spectrum, ergodic_mean_operator
from .scenario import scenario_from_config
from .solver import solve
from .special import mittag_leffler


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _cmd_ml(args) -> int:
    value = mittag_leffler(args.alpha, args.beta, complex(args.re, args.im))
    print(f"{value.real:.17g},{value.imag:.17g}")
    return 0


def _cmd_solve(args) -> int:
    scenario = scenario_from_config(args.config)
    u = solve(scenario)
    write_signal_csv(args.out, u)
    print(f"wrote {u.nsamples} samples to {args.out}")
    return 0


def _cmd_spectrum(args) -> int:
    scenario = scenario_from_config(args.config)
    spectrum = boundary_spectrum(scenario.operator, scenario.alpha)
    print("xi,reason")
    for p in spectrum:
        print(f"{_fmt(p.xi)},{p.reason.value}")
    return 0


def _cmd_scan(args) -> int:
    signal = read_signal_csv(args.signal, degree=args.degree)
    xi_grid = np.linspace(args.xi_min, args.xi_max, args.xi_steps)
    eta = tuple(0.5 ** k for k in range(1, args.eta_count + 1)) if args.eta_count else None
    points = singularity_scan(signal, args.degree, xi_grid, eta_sequence=eta)
    print("xi,order,fit_slope")
    for p in points:
        print(f"{_fmt(p.xi)},{p.order},{_fmt(p.slope)}")
    return 0


def _cmd_ergodic(args) -> int:
    scenario = scenario_from_config(args.config)
    print("level,eta,scaled_norm")
    _, op_diag = ergodic_mean_operator(
        scenario.operator, scenario.alpha, args.zeta, scenario.x0
    )
    for eta, norm in zip(op_diag.eta_values, op_diag.scaled_norms):
        print(f"operator,{_fmt(eta)},{_fmt(norm)}")
    summaries = [
        f"# operator limit={_fmt(op_diag.extrapolated_limit)} "
        f"converged={int(op_diag.converged)} divergent={int(op_diag.divergent)}"
    ]
    if args.signal:
        sig = read_signal_csv(args.signal, degree=scenario.degree)
        _, sig_diag = ergodic_mean_signal(sig, scenario.degree, args.zeta)
        for eta, norm in zip(sig_diag.eta_values, sig_diag.scaled_norms):
            print(f"signal,{_fmt(eta)},{_fmt(norm)}")
        summaries.append(
            f"# signal limit={_fmt(sig_diag.extrapolated_limit)} "
            f"converged={int(sig_diag.converged)} divergent={int(sig_diag.divergent)}"
        )
    for line in summaries:
        print(line)
    return 0


def _cmd_verify(args) -> int:
    configs = args.config
    render = not args.no_figures
    if len(configs) == 1:
        return run_scenario(configs[0], args.out, render=render)
    workers = int(os.environ.get("FRACSPEC_THREADS", "0") or 0)
    if workers <= 0:
        workers = min(4, os.cpu_count() or 1)
    names = [os.path.splitext(os.path.basename(c))[0] for c in configs]
    outs = [os.path.join(args.out, name) for name in names]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        codes = list(
            pool.map(lambda pair: run_scenario(pair[0], pair[1], render=render),
                     zip(configs, outs))
        )
    for name, code in zip(names, codes):
        print(f"{name}: exit {code}")
    return max(codes)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracspec",
        description="numerical lab for weighted stability of fractional evolution equations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ml", help="evaluate the Mittag-Leffler function")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--im", type=float, required=True)
    p.set_defaults(func=_cmd_ml)

    p = sub.add_parser("solve", help="solve a scenario and write the solution CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("spectrum", help="print the boundary spectral set as CSV")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("scan", help="scan a signal for transform singularities")
    p.add_argument("--signal", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--xi-min", type=float, required=True)
    p.add_argument("--xi-max", type=float, required=True)
    p.add_argument("--xi-steps", type=int, required=True)
    p.add_argument("--eta-count", type=int, default=0,
                   help="use eta = 0.5^k for k = 1..count (default: grid-feasible)")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("ergodic", help="scaled resolvent means along eta")
    p.add_argument("--config", required=True)
    p.add_argument("--zeta", type=float, required=True)
    p.add_argument("--signal", help="also compute signal-level means of this CSV")
    p.set_defaults(func=_cmd_ergodic)

    p = sub.add_parser("verify", help="full hypothesis check and decay verdict")
    p.add_argument("--config", action="append", required=True,
                   help="scenario config; repeat to run a batch in parallel")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FracspecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
