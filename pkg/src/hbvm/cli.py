"""Command-line front end.

    hbvm tableau   --k 4 --s 2 --nodes gauss
    hbvm spectrum  --k 6 --s 2
    hbvm integrate --problem quartic_oscillator --k 4 --s 2 --h 0.1 --steps 500
    hbvm order     --problem harmonic --k 4 --s 2 --h 0.1 --levels 5
    hbvm conserve  --problem quartic_oscillator --s 2 --k-max 6

Exit status: 0 success, 1 invalid configuration, 2 solver or eigensolver
failure, 3 spectral mismatch.
"""

import argparse
from contextlib import contextmanager
from dataclasses import dataclass
import sys
from typing import Optional

import numpy as np

from ._io import csv_line, dumps_json
from .integrator import SolveSettings, SolverError, convergence_order, integrate
from .problems import BUILTIN_NAMES, builtin
from .quadrature import make_rule
from .smalllinalg import EigenvalueConvergenceError
from .spectral import isospectral_report
from .tableau import ConfigurationError, build_hbvm

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2
EXIT_MISMATCH = 3


@dataclass
class RunConfig:
    subcommand: str
    k: int = 2
    s: int = 2
    nodes: str = "gauss"
    problem: str = "harmonic"
    h: float = 0.1
    steps: int = 500
    tol: float = 1e-14
    max_iter: int = 100
    output: str = "-"
    format: str = "csv"
    levels: int = 5
    t_final: float = 1.0
    k_max: Optional[int] = None
    y0: Optional[list] = None

    @property
    def settings(self):
        return SolveSettings(tol=self.tol, max_iter=self.max_iter)

    def tableau(self, k=None):
        k = self.k if k is None else k
        return build_hbvm(k, self.s, make_rule(self.nodes, k))

    def initial_state(self, system):
        if self.y0 is None:
            return system.default_y0
        y0 = np.asarray(self.y0, dtype=float)
        if y0.shape != (system.dim,):
            raise ConfigurationError(f"--y0 needs {system.dim} values for {system.name}")
        return y0


@contextmanager
def _open_output(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def _write_trajectory_csv(fh, traj, h):
    dim = traj.ys.shape[1]
    fh.write(csv_line(["step", "t", "H", "drift"] + [f"y_{i}" for i in range(dim)]))
    drift = traj.energy_drift
    for n in range(len(traj)):
        fh.write(csv_line([n, float(n * h), traj.energies[n], drift[n]] + list(traj.ys[n])))


def _trajectory_dict(cfg, traj):
    return {
        "problem": cfg.problem,
        "k": cfg.k,
        "s": cfg.s,
        "kind": cfg.nodes,
        "h": cfg.h,
        "step": list(range(len(traj))),
        "t": [float(n * cfg.h) for n in range(len(traj))],
        "H": traj.energies,
        "drift": traj.energy_drift,
        "y": traj.ys,
    }


def cmd_tableau(cfg):
    tab = cfg.tableau()
    with _open_output(cfg.output) as fh:
        fh.write(tab.to_json())
    return EXIT_OK


def cmd_spectrum(cfg):
    report = isospectral_report(cfg.tableau())
    with _open_output(cfg.output) as fh:
        fh.write(report.to_json())
    return EXIT_OK if report.matched else EXIT_MISMATCH


def cmd_integrate(cfg):
    system = builtin(cfg.problem)
    tab = cfg.tableau()
    y0 = cfg.initial_state(system)
    status = EXIT_OK
    try:
        traj = integrate(system, tab, y0, cfg.h, cfg.steps, cfg.settings)
    except SolverError as err:
        traj = err.trajectory
        status = EXIT_SOLVER
        print(f"error: {err}", file=sys.stderr)
    with _open_output(cfg.output) as fh:
        if cfg.format == "json":
            fh.write(dumps_json(_trajectory_dict(cfg, traj)))
        else:
            _write_trajectory_csv(fh, traj, cfg.h)
    return status


def cmd_order(cfg):
    system = builtin(cfg.problem)
    if system.exact_solution is None:
        raise ConfigurationError(f"problem {cfg.problem} has no exact solution for an order study")
    hs = [cfg.h / 2 ** j for j in range(cfg.levels)]
    study = convergence_order(system, cfg.tableau(), hs, cfg.t_final,
                              cfg.initial_state(system), cfg.settings)
    with _open_output(cfg.output) as fh:
        fh.write(csv_line(["h", "error", "observed_order"]))
        for h, e, p in zip(study.h, study.errors, study.observed_orders):
            fh.write(csv_line([float(h), float(e), None if np.isnan(p) else float(p)]))
        fh.write(csv_line(["# fitted_slope", study.slope, None]))
    return EXIT_OK


def cmd_conserve(cfg):
    system = builtin(cfg.problem)
    y0 = cfg.initial_state(system)
    k_max = cfg.k_max if cfg.k_max is not None else max(cfg.k, cfg.s + 4)
    rows = []
    for k in range(cfg.s, k_max + 1):
        try:
            tab = cfg.tableau(k)
        except ConfigurationError:
            # lobatto needs k > s
            continue
        traj = integrate(system, tab, y0, cfg.h, cfg.steps, cfg.settings)
        rows.append((k, traj.max_drift))
    with _open_output(cfg.output) as fh:
        fh.write(csv_line(["k", "max_drift"]))
        for k, d in rows:
            fh.write(csv_line([k, d]))
    return EXIT_OK


COMMANDS = {
    "tableau": cmd_tableau,
    "spectrum": cmd_spectrum,
    "integrate": cmd_integrate,
    "order": cmd_order,
    "conserve": cmd_conserve,
}


def _y0(text):
    return [float(v) for v in text.split(",")]


def build_parser():
    parser = argparse.ArgumentParser(prog="hbvm", description="HBVM(k,s) tableaux, spectra and integrations")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--k", type=int, default=2, help="number of stages")
        p.add_argument("--s", type=int, default=2, help="degree of the local polynomial")
        p.add_argument("--nodes", choices=("gauss", "lobatto"), default="gauss")
        p.add_argument("--output", "-o", default="-", help="output file, '-' for stdout")
        if name in ("integrate", "order", "conserve"):
            p.add_argument("--problem", choices=BUILTIN_NAMES, default="harmonic")
            p.add_argument("--h", type=float, default=0.1, help="step size (largest one for 'order')")
            p.add_argument("--tol", type=float, default=1e-14)
            p.add_argument("--max-iter", type=int, default=100)
            p.add_argument("--y0", type=_y0, default=None, help="comma-separated initial state")
        if name in ("integrate", "conserve"):
            p.add_argument("--steps", type=int, default=500)
        if name == "integrate":
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        if name == "order":
            p.add_argument("--levels", type=int, default=5, help="number of halvings of h")
            p.add_argument("--t-final", type=float, default=1.0)
        if name == "conserve":
            p.add_argument("--k-max", type=int, default=None)
    return parser


def parse_config(argv):
    args = build_parser().parse_args(argv)
    return RunConfig(**vars(args))


def run(cfg):
    try:
        if cfg.h <= 0 or cfg.steps < 1 or cfg.tol <= 0 or cfg.max_iter < 1:
            raise ConfigurationError("h, steps, tol and max-iter must be positive")
        return COMMANDS[cfg.subcommand](cfg)
    except (ConfigurationError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (SolverError, EigenvalueConvergenceError, ArithmeticError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_SOLVER


def main(argv=None):
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
