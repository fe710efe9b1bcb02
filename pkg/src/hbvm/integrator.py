"""Time stepping with HBVM(k, s) tableaux.

The default ``gamma_space`` formulation iterates directly on the s
coefficients ``gamma_j`` of the derivative of the local polynomial,

    gamma_j <- sum_l omega_l P_j(tau_l) f(y0 + h sum_i Is[l, i] gamma_i),

so the unknowns number ``s * 2m`` whatever k is; extra stages only cost
vector-field evaluations.  The ``stage_space`` formulation iterates the
ordinary Runge-Kutta stage equations on ``k * 2m`` unknowns and is kept as a
cross-check.  Both use plain fixed-point iteration started from the constant
polynomial ``sigma = y0``.
"""

from dataclasses import dataclass, field
import math
from typing import Optional

import numpy as np

from .problems import State, vector_field

FORMULATIONS = ("gamma_space", "stage_space")


class SolverError(RuntimeError):
    """The stage equations did not converge.

    ``residual`` is the last fixed-point increment; ``trajectory`` holds the
    steps completed before the failure when raised from :func:`integrate`.
    """

    def __init__(self, message, residual=math.nan, iterations=0, trajectory=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.trajectory = trajectory


@dataclass(frozen=True)
class SolveSettings:
    tol: float = 1e-14
    max_iter: int = 100
    formulation: str = "gamma_space"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.formulation not in FORMULATIONS:
            raise ValueError(f"formulation must be one of {FORMULATIONS}, got {self.formulation!r}")


@dataclass
class StepResult:
    y_next: np.ndarray
    iterations: int
    gamma: np.ndarray
    stage_values: np.ndarray
    converged: bool
    residual: float


def _fail(h, it, res):
    return SolverError(
        f"fixed-point iteration did not converge in {it} iterations "
        f"(last increment {res:.3e}); try a smaller step than h={h}",
        residual=res, iterations=it)


def _step_gamma(sys, tab, y0, h, settings):
    Is = tab.Is
    gmap = tab.gamma_map
    gamma = np.zeros((tab.s, y0.size))
    res = math.inf
    for it in range(1, settings.max_iter + 1):
        stages = y0 + h * (Is @ gamma)
        new = gmap @ vector_field(sys, stages)
        res = float(np.max(np.abs(new - gamma)))
        gamma = new
        if res <= settings.tol * (1.0 + float(np.max(np.abs(gamma)))):
            stages = y0 + h * (Is @ gamma)
            y_next = y0 + h * gamma[0]
            return StepResult(y_next, it, gamma, stages, True, res)
    raise _fail(h, settings.max_iter, res)


def _step_stage(sys, tab, y0, h, settings):
    A = tab.A
    stages = np.tile(y0, (tab.k, 1))
    res = math.inf
    for it in range(1, settings.max_iter + 1):
        new = y0 + h * (A @ vector_field(sys, stages))
        res = float(np.max(np.abs(new - stages)))
        stages = new
        if res <= settings.tol * (1.0 + float(np.max(np.abs(stages)))):
            F = vector_field(sys, stages)
            gamma = tab.gamma_map @ F
            y_next = y0 + h * (tab.b @ F)
            return StepResult(y_next, it, gamma, stages, True, res)
    raise _fail(h, settings.max_iter, res)


def step(sys, tab, y0, h, settings=None):
    """Advance one step of size ``h`` (negative ``h`` steps backwards)."""
    settings = settings or SolveSettings()
    y0 = np.asarray(y0, dtype=float)
    if y0.shape != (sys.dim,):
        raise ValueError(f"initial state must have shape ({sys.dim},), got {y0.shape}")
    if h == 0 or not math.isfinite(h):
        raise ValueError(f"step size must be finite and nonzero, got {h}")
    if settings.formulation == "gamma_space":
        return _step_gamma(sys, tab, y0, h, settings)
    return _step_stage(sys, tab, y0, h, settings)


@dataclass
class Trajectory:
    times: np.ndarray
    ys: np.ndarray
    energies: np.ndarray
    iterations: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))

    @property
    def energy_drift(self):
        return self.energies - self.energies[0]

    @property
    def max_drift(self):
        return float(np.max(np.abs(self.energy_drift)))

    @property
    def states(self):
        return [State(float(t), y) for t, y in zip(self.times, self.ys)]

    def __len__(self):
        return len(self.times)


def integrate(sys, tab, y0, h, n_steps, settings=None, t0=0.0):
    """Take ``n_steps`` constant steps from ``y0``; energy recorded at every point.

    On a solver failure the raised :class:`SolverError` carries the partial
    trajectory up to the last successful step.
    """
    settings = settings or SolveSettings()
    if not h > 0:
        raise ValueError(f"step size must be positive, got {h}")
    y = np.asarray(y0, dtype=float).copy()
    ys = np.empty((n_steps + 1, y.size))
    iters = np.zeros(n_steps, dtype=int)
    ys[0] = y
    done = 0
    try:
        for n in range(n_steps):
            res = step(sys, tab, y, h, settings)
            y = res.y_next
            ys[n + 1] = y
            iters[n] = res.iterations
            done = n + 1
    except SolverError as err:
        err.trajectory = _trajectory(sys, ys[:done + 1], iters[:done], h, t0)
        raise
    return _trajectory(sys, ys, iters, h, t0)


def _trajectory(sys, ys, iters, h, t0):
    times = t0 + h * np.arange(len(ys))
    return Trajectory(times, ys, np.asarray(sys.energy(ys), dtype=float), iters)


ROUNDOFF_FLOOR = 1e-12


@dataclass
class OrderStudy:
    h: np.ndarray
    errors: np.ndarray
    observed_orders: np.ndarray
    slope: float
    excluded: list

    def __float__(self):
        return self.slope


def convergence_order(sys, tab, h_list, T, y0=None, settings=None, floor=ROUNDOFF_FLOOR):
    """Fit the slope of log(error at T) against log(h).

    Errors below ``floor`` are treated as round-off dominated and left out of
    the fit; their step sizes are listed in ``excluded``.
    """
    if sys.exact_solution is None:
        raise ValueError(f"system {sys.name} has no exact solution")
    h_list = np.asarray(sorted(h_list, reverse=True), dtype=float)
    if h_list.size < 4:
        raise ValueError("at least four step sizes are needed")
    y0 = np.asarray(sys.default_y0 if y0 is None else y0, dtype=float)
    exact = sys.exact_solution(T, y0)
    errors = np.empty(h_list.size)
    for i, h in enumerate(h_list):
        n = int(round(T / h))
        if n < 1 or abs(n * h - T) > 1e-12 * max(1.0, T):
            raise ValueError(f"step size {h} does not divide T={T}")
        traj = integrate(sys, tab, y0, h, n, settings)
        errors[i] = float(np.max(np.abs(traj.ys[-1] - exact)))
    observed = np.full(h_list.size, np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        observed[1:] = np.log(errors[:-1] / errors[1:]) / np.log(h_list[:-1] / h_list[1:])
    keep = errors > floor
    excluded = [float(h) for h in h_list[~keep]]
    if keep.sum() < 2:
        raise ArithmeticError(
            f"degenerate fit: only {int(keep.sum())} errors above the round-off floor {floor:g}")
    slope = float(np.polyfit(np.log(h_list[keep]), np.log(errors[keep]), 1)[0])
    return OrderStudy(h_list, errors, observed, slope, excluded)


def symmetry_check(sys, tab, y0, h, settings=None):
    """Step forward by ``h`` then back by ``-h``; return the max-norm defect."""
    settings = settings or SolveSettings()
    fwd = step(sys, tab, y0, h, settings)
    back = step(sys, tab, fwd.y_next, -h, settings)
    return float(np.max(np.abs(back.y_next - np.asarray(y0, dtype=float))))
