"""Butcher tableaux of HBVM(k, s) methods and of k-stage collocation methods.

An HBVM(k, s) tableau is built on a quadrature rule with k abscissae
``tau`` and weights ``omega``:

    Omega = diag(omega)
    Ps[i, j]  = P_j(tau_i)                 (k x s)
    Is[i, j]  = int_0^{tau_i} P_j(x) dx    (k x s)
    A = Is @ Ps.T @ Omega                  (k x k, rank s)

with ``b = omega`` and ``c = tau``.  When k = s on Gauss nodes this is the
s-stage Gauss-Legendre method.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import legendre
from ._io import dumps_json
from .quadrature import QuadratureRule, gauss_rule, make_rule
from .smalllinalg import mat_mul

FILTER_TOL = 1e-12


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HbvmTableau:
    k: int
    s: int
    rule: QuadratureRule
    Omega: np.ndarray
    Ps: np.ndarray
    Ps1: np.ndarray
    Is: np.ndarray
    A: np.ndarray

    @property
    def b(self):
        return self.rule.weights

    @property
    def c(self):
        return self.rule.nodes

    @property
    def kind(self):
        return self.rule.kind

    @property
    def gamma_map(self):
        """``Ps.T @ Omega``: maps stage derivatives to the coefficients ``gamma_j``."""
        return self.Ps.T * self.rule.weights[None, :]

    def to_dict(self):
        return {
            "k": self.k,
            "s": self.s,
            "kind": self.kind,
            "c": self.c.tolist(),
            "b": self.b.tolist(),
            "A": self.A.tolist(),
        }

    def to_json(self):
        return dumps_json(self.to_dict())


@dataclass(frozen=True, eq=False)
class CollocationTableau:
    rule: QuadratureRule
    Acal: np.ndarray

    @property
    def k(self):
        return self.rule.k

    @property
    def b(self):
        return self.rule.weights

    @property
    def c(self):
        return self.rule.nodes


def _resolve_rule(k, rule):
    if rule is None:
        rule = "gauss"
    if isinstance(rule, str):
        return make_rule(rule, k)
    return rule


def require_b2s(rule, s):
    """Raise unless ``rule`` integrates degree ``2s - 1`` exactly (assumption B(2s))."""
    if rule.exactness < 2 * s - 1:
        raise ConfigurationError(
            f"{rule.kind} rule with k={rule.k} has exactness {rule.exactness} < 2s-1={2 * s - 1}; "
            f"the simplifying assumption B(2s) does not hold for s={s}")


def build_hbvm(k, s, rule=None):
    """Assemble the HBVM(k, s) tableau.

    Parameters
    ----------
    k, s : int
        Number of stages and degree of the underlying polynomial.
    rule : QuadratureRule or {"gauss", "lobatto"}, optional
        The k-point rule supplying the abscissae and weights.  Defaults to
        Gauss-Legendre nodes.

    Raises
    ------
    ConfigurationError
        If the rule's exactness is below ``2s - 1``, ``s > k`` or the rule
        does not have ``k`` nodes.
    """
    if s < 1:
        raise ConfigurationError(f"degree s must be at least 1, got {s}")
    rule = _resolve_rule(k, rule)
    if rule.k != k:
        raise ConfigurationError(f"rule has {rule.k} nodes but k={k}")
    require_b2s(rule, s)
    if s > k:
        raise ConfigurationError(f"degree s={s} exceeds the number of stages k={k}")

    tau = rule.nodes
    Omega = np.diag(rule.weights)
    Ps1 = legendre.basis_matrix(tau, s + 1)
    Ps = Ps1[:, :s].copy()
    Is = legendre.antiderivative_matrix(tau, s)
    A = mat_mul(Is, mat_mul(Ps.T, Omega))
    return HbvmTableau(k, s, rule, Omega, Ps, Ps1, Is, A)


def lagrange_basis(nodes, j, x):
    """The j-th (0-based) Lagrange polynomial on ``nodes`` evaluated at ``x``."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    for m, tm in enumerate(nodes):
        if m != j:
            out = out * (x - tm) / (nodes[j] - tm)
    return out


def build_collocation(rule):
    """Collocation tableau ``alpha[i, j] = int_0^{tau_i} l_j(x) dx`` on the rule's nodes.

    ``l_j`` has degree k-1, so a Gauss rule with ceil(k/2) points mapped onto
    [0, tau_i] integrates it exactly.
    """
    tau = np.asarray(rule.nodes, dtype=float)
    k = tau.size
    if np.any(np.diff(np.sort(tau)) == 0.0):
        raise ConfigurationError("collocation nodes must be distinct")
    sub = gauss_rule(max(1, math.ceil(k / 2)))
    Acal = np.empty((k, k))
    for i, ti in enumerate(tau):
        x = ti * sub.nodes
        for j in range(k):
            Acal[i, j] = ti * float(sub.weights @ lagrange_basis(tau, j, x))
    return CollocationTableau(rule, Acal)


def filter_collocation(col, s):
    """Turn a collocation tableau into HBVM(k, s) by the rank-s filter ``Ps Ps^T Omega``.

    Checks on the way that ``Acal @ Ps`` reproduces the integral matrix ``Is``;
    the result therefore coincides with :func:`build_hbvm` on the same rule.
    """
    rule = col.rule
    k = rule.k
    if s < 1 or s > k:
        raise ConfigurationError(f"degree s={s} must satisfy 1 <= s <= k={k}")
    require_b2s(rule, s)
    tau = rule.nodes
    Omega = np.diag(rule.weights)
    Ps1 = legendre.basis_matrix(tau, s + 1)
    Ps = Ps1[:, :s].copy()
    Is = legendre.antiderivative_matrix(tau, s)
    AP = mat_mul(col.Acal, Ps)
    defect = float(np.max(np.abs(AP - Is)))
    if defect > FILTER_TOL:
        raise ArithmeticError(f"collocation matrix fails Acal @ Ps == Is (defect {defect:.3e})")
    A = mat_mul(col.Acal, mat_mul(Ps, mat_mul(Ps.T, Omega)))
    return HbvmTableau(k, s, rule, Omega, Ps, Ps1, Is, A)

