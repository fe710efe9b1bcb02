"""Gauss-Legendre and Gauss-Lobatto rules on [0, 1]."""

from dataclasses import dataclass
import math

import numpy as np

MAX_NODES = 32
MOMENT_TOL = 1e-13
_NEWTON_MAXITER = 100


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Abscissae and weights of an interpolatory rule on [0, 1].

    ``exactness`` is the largest degree ``d`` such that every polynomial of
    degree ``<= d`` is integrated exactly.
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    exactness: int

    @property
    def k(self):
        return self.nodes.size

    def integrate(self, values):
        """Apply the rule to samples taken at ``nodes`` (first axis)."""
        return np.tensordot(self.weights, np.asarray(values, dtype=float), axes=(0, 0))

    def __repr__(self):
        return f"QuadratureRule(kind={self.kind!r}, k={self.k}, exactness={self.exactness})"


def _legendre_with_derivative(n, x):
    """``P_n(x)`` and ``P_n'(x)`` on [-1, 1] for scalar interior ``x``."""
    p0, p1 = 1.0, x
    if n == 0:
        return 1.0, 0.0
    for j in range(1, n):
        p0, p1 = p1, ((2 * j + 1) * x * p1 - j * p0) / (j + 1)
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def _newton(fun, x0, what):
    x = x0
    for _ in range(_NEWTON_MAXITER):
        f, df = fun(x)
        dx = f / df
        x -= dx
        if abs(dx) <= 1e-16 * max(1.0, abs(x)):
            # one extra correction at converged precision
            f, df = fun(x)
            return x - f / df
    raise QuadratureError(f"Newton iteration for {what} did not converge")


def _mirror(half_nodes, half_weights, k, center_node=None, center_weight=None):
    """Assemble a rule symmetric about 0 on [-1, 1] from its right half."""
    nodes = np.empty(k)
    weights = np.empty(k)
    m = len(half_nodes)
    # half_nodes are positive and decreasing
    nodes[:m] = -np.asarray(half_nodes)
    nodes[k - m:] = np.asarray(half_nodes)[::-1]
    weights[:m] = half_weights
    weights[k - m:] = np.asarray(half_weights)[::-1]
    if center_node is not None:
        nodes[m] = center_node
        weights[m] = center_weight
    return nodes, weights


def _to_unit_interval(kind, x, w, exactness):
    nodes = 0.5 * (x + 1.0)
    # exact symmetry about 1/2
    k = nodes.size
    for i in range(k // 2):
        nodes[k - 1 - i] = 1.0 - nodes[i]
    if k % 2:
        nodes[k // 2] = 0.5
    return QuadratureRule(kind, nodes, 0.5 * w, exactness)


def gauss_rule(k):
    """k-point Gauss-Legendre rule on [0, 1], exact through degree ``2k - 1``.

    Nodes are the roots of the degree-``k`` shifted Legendre polynomial,
    polished by Newton's method from the usual cosine estimates (these
    interlace the roots).  Weights are ``1 / ((1 - x^2) P_k'(x)^2)`` in the
    [-1, 1] variable, halved for the unit interval.
    """
    if not 1 <= k <= MAX_NODES:
        raise ValueError(f"Gauss rule needs 1 <= k <= {MAX_NODES}, got {k}")
    half_x, half_w = [], []
    for i in range(1, k // 2 + 1):
        guess = math.cos(math.pi * (i - 0.25) / (k + 0.5))
        x = _newton(lambda z: _legendre_with_derivative(k, z), guess, f"Gauss node {i} of {k}")
        _, dp = _legendre_with_derivative(k, x)
        half_x.append(x)
        half_w.append(2.0 / ((1.0 - x * x) * dp * dp))
    center = None
    center_w = None
    if k % 2:
        _, dp = _legendre_with_derivative(k, 0.0)
        center, center_w = 0.0, 2.0 / (dp * dp)
    x, w = _mirror(half_x, half_w, k, center, center_w)
    return _to_unit_interval("gauss", x, w, 2 * k - 1)


def _lobatto_newton_fun(n):
    def fun(x):
        p, dp = _legendre_with_derivative(n, x)
        d2p = (2.0 * x * dp - n * (n + 1) * p) / (1.0 - x * x)
        return dp, d2p
    return fun


def lobatto_rule(k):
    """k-point Gauss-Lobatto rule on [0, 1] with both endpoints as nodes.

    Interior nodes are the critical points of the degree ``k - 1`` Legendre
    polynomial; exact through degree ``2k - 3``.
    """
    if not 2 <= k <= MAX_NODES:
        raise ValueError(f"Lobatto rule needs 2 <= k <= {MAX_NODES}, got {k}")
    n = k - 1
    end_w = 2.0 / (n * (n + 1))
    half_x, half_w = [1.0], [end_w]
    fun = _lobatto_newton_fun(n)
    for i in range(1, (k - 2) // 2 + 1):
        # Chebyshev-Lobatto points interlace the Legendre critical points
        guess = math.cos(math.pi * i / n)
        guess = 0.5 * (guess + math.cos(math.pi * (i + 0.5) / (n + 0.5)))
        x = _newton(fun, guess, f"Lobatto node {i} of {k}")
        p, _ = _legendre_with_derivative(n, x)
        half_x.append(x)
        half_w.append(2.0 / (n * (n + 1) * p * p))
    center = None
    center_w = None
    if k % 2:
        p0 = _legendre_with_derivative(n, 0.0)[0]
        center, center_w = 0.0, 2.0 / (n * (n + 1) * p0 * p0)
    x, w = _mirror(half_x, half_w, k, center, center_w)
    return _to_unit_interval("lobatto", x, w, 2 * k - 3)


def make_rule(kind, k):
    if kind == "gauss":
        return gauss_rule(k)
    if kind == "lobatto":
        return lobatto_rule(k)
    raise ValueError(f"unknown node family {kind!r}; expected 'gauss' or 'lobatto'")


def moment_errors(rule, degree):
    """``|sum w_i t_i^d - 1/(d+1)|`` for ``d = 0..degree``."""
    d = np.arange(degree + 1)
    approx = rule.weights @ (rule.nodes[:, None] ** d[None, :])
    return np.abs(approx - 1.0 / (d + 1.0))


def check_exactness(rule, degree):
    """Whether ``rule`` reproduces all monomial moments up to ``degree``.

    Returns ``(ok, max_error)``.
    """
    if degree > 2 * rule.k:
        raise ValueError(f"degree {degree} exceeds 2k = {2 * rule.k}")
    if degree < 0:
        return True, 0.0
    err = float(np.max(moment_errors(rule, degree)))
    return err <= MOMENT_TOL, err
