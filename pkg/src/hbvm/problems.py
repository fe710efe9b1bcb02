"""Canonical Hamiltonian test problems.

States are ordered ``y = (q_1..q_m, p_1..p_m)`` and the vector field is
``f(y) = (dH/dp, -dH/dq)``.  Hamiltonians and gradients accept a single
state of shape ``(2m,)`` or a stack of states of shape ``(n, 2m)``.
"""

from dataclasses import dataclass
import math
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class State:
    t: float
    y: np.ndarray


@dataclass(frozen=True, eq=False)
class HamiltonianSystem:
    name: str
    m: int
    hamiltonian: Callable
    gradient: Callable
    poly_degree: Optional[int] = None
    exact_solution: Optional[Callable] = None
    default_y0: Optional[np.ndarray] = None

    @property
    def dim(self):
        return 2 * self.m

    def energy(self, y):
        return self.hamiltonian(np.asarray(y, dtype=float))

    def __call__(self, y):
        return vector_field(self, y)


def vector_field(sys, y):
    """``J grad H(y)`` for a single state or a stack of states."""
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != sys.dim:
        raise ValueError(f"state has length {y.shape[-1]}, system {sys.name} expects {sys.dim}")
    g = sys.gradient(y)
    m = sys.m
    return np.concatenate((g[..., m:], -g[..., :m]), axis=-1)


def _split(y, m):
    return y[..., :m], y[..., m:]


def _harmonic():
    def H(y):
        return 0.5 * np.sum(y * y, axis=-1)

    def grad(y):
        return np.array(y, dtype=float)

    def exact(t, y0):
        q0, p0 = y0
        ct, st = math.cos(t), math.sin(t)
        return np.array([q0 * ct + p0 * st, -q0 * st + p0 * ct])

    return HamiltonianSystem("harmonic", 1, H, grad, 2, exact, np.array([1.0, 0.0]))


def _power_oscillator(name, power):
    # H = p^2/2 + q^power/power
    def H(y):
        q, p = y[..., 0], y[..., 1]
        return 0.5 * p * p + q ** power / power

    def grad(y):
        q, p = y[..., 0], y[..., 1]
        return np.stack((q ** (power - 1), p), axis=-1)

    return HamiltonianSystem(name, 1, H, grad, power, None, np.array([1.0, 0.0]))


def _pendulum():
    def H(y):
        q, p = y[..., 0], y[..., 1]
        return 0.5 * p * p - np.cos(q)

    def grad(y):
        q, p = y[..., 0], y[..., 1]
        return np.stack((np.sin(q), p), axis=-1)

    return HamiltonianSystem("pendulum", 1, H, grad, None, None, np.array([0.0, 1.5]))


def _henon_heiles():
    def H(y):
        q1, q2, p1, p2 = (y[..., i] for i in range(4))
        return 0.5 * (p1 * p1 + p2 * p2) + 0.5 * (q1 * q1 + q2 * q2) + q1 * q1 * q2 - q2 ** 3 / 3.0

    def grad(y):
        q1, q2, p1, p2 = (y[..., i] for i in range(4))
        return np.stack((q1 + 2.0 * q1 * q2, q2 + q1 * q1 - q2 * q2, p1, p2), axis=-1)

    return HamiltonianSystem("henon_heiles", 2, H, grad, 3, None, np.array([0.0, 0.1, 0.4, 0.1]))


def solve_kepler_equation(mean_anomaly, e, tol=1e-14, maxiter=100):
    """Eccentric anomaly ``E`` with ``E - e sin E = M`` by Newton's method."""
    M = math.remainder(mean_anomaly, 2.0 * math.pi)
    E = M if e < 0.8 else math.copysign(math.pi, M)
    for _ in range(maxiter):
        dE = (E - e * math.sin(E) - M) / (1.0 - e * math.cos(E))
        E -= dE
        if abs(dE) <= tol:
            return E + (mean_anomaly - M)
    raise ArithmeticError(f"Kepler equation did not converge for M={mean_anomaly}, e={e}")


def kepler_initial_state(e):
    """Pericentre state of the unit-period-2pi orbit with eccentricity ``e``."""
    return np.array([1.0 - e, 0.0, 0.0, math.sqrt((1.0 + e) / (1.0 - e))])


def kepler_exact(t, y0):
    """Two-body flow (unit gravitational parameter) from an elliptic state ``y0``."""
    y0 = np.asarray(y0, dtype=float)
    r0 = y0[:2]
    v0 = y0[2:]
    r = math.hypot(*r0)
    energy = 0.5 * float(v0 @ v0) - 1.0 / r
    if energy >= 0.0:
        raise ValueError("exact Kepler flow is only provided for bound orbits")
    a = -0.5 / energy
    L = r0[0] * v0[1] - r0[1] * v0[0]
    sgn = 1.0 if L >= 0.0 else -1.0
    # eccentricity vector: v x L - r/|r| in the plane
    evec = np.array([v0[1] * L, -v0[0] * L]) - r0 / r
    e = math.hypot(*evec)
    ehat = evec / e if e > 1e-14 else np.array([1.0, 0.0])
    fhat = sgn * np.array([-ehat[1], ehat[0]])
    b = a * math.sqrt(1.0 - e * e)
    n = a ** -1.5
    E0 = math.atan2(float(r0 @ fhat) / b, float(r0 @ ehat) / a + e)
    M = E0 - e * math.sin(E0) + n * t
    E = solve_kepler_equation(M, e)
    cE, sE = math.cos(E), math.sin(E)
    x, y = a * (cE - e), b * sE
    denom = 1.0 - e * cE
    vx, vy = -a * n * sE / denom, b * n * cE / denom
    return np.concatenate((x * ehat + y * fhat, vx * ehat + vy * fhat))


def _kepler(e=0.3):
    def H(y):
        q1, q2, p1, p2 = (y[..., i] for i in range(4))
        return 0.5 * (p1 * p1 + p2 * p2) - 1.0 / np.sqrt(q1 * q1 + q2 * q2)

    def grad(y):
        q1, q2, p1, p2 = (y[..., i] for i in range(4))
        r3 = (q1 * q1 + q2 * q2) ** 1.5
        return np.stack((q1 / r3, q2 / r3, p1, p2), axis=-1)

    return HamiltonianSystem("kepler", 2, H, grad, None, kepler_exact, kepler_initial_state(e))


_BUILTINS = {
    "harmonic": _harmonic,
    "quartic_oscillator": lambda: _power_oscillator("quartic_oscillator", 4),
    "sextic_oscillator": lambda: _power_oscillator("sextic_oscillator", 6),
    "pendulum": _pendulum,
    "henon_heiles": _henon_heiles,
    "kepler": _kepler,
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name):
    """Look up one of the bundled systems by name."""
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown problem {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None


def finite_difference_gradient(sys, y, eps=1e-6):
    """Central-difference gradient of the Hamiltonian, for checking ``sys.gradient``."""
    y = np.asarray(y, dtype=float)
    g = np.empty_like(y)
    for i in range(y.size):
        step = eps * max(1.0, abs(y[i]))
        up = y.copy()
        dn = y.copy()
        up[i] += step
        dn[i] -= step
        g[i] = (sys.hamiltonian(up) - sys.hamiltonian(dn)) / (2.0 * step)
    return g
