"""Orthonormal shifted Legendre basis on [0, 1].

The basis is indexed from one: ``P_1 = 1``, ``P_2(t) = sqrt(3)(2t - 1)``, and
in general ``P_j = sqrt(2j - 1) * L_{j-1}`` with ``L_n`` the shifted Legendre
polynomial of degree ``n``.  All functions accept scalars or arrays for the
abscissa and return the matching shape.
"""

from dataclasses import dataclass

import numpy as np

_DOMAIN_SLACK = 1e-14


def _check_domain(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < -_DOMAIN_SLACK) or np.any(t > 1.0 + _DOMAIN_SLACK):
        raise ValueError("abscissa must lie in [0, 1]")
    return np.clip(t, 0.0, 1.0)


def _check_index(j):
    if int(j) != j or j < 1:
        raise ValueError(f"basis index must be a positive integer, got {j!r}")
    return int(j)


def shifted_legendre_table(nmax, t):
    """Values of ``L_0 .. L_nmax`` at ``t`` via the three-term recurrence.

    Returns an array of shape ``(nmax + 1,) + shape(t)``.
    """
    x = 2.0 * np.asarray(t, dtype=float) - 1.0
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x
    for n in range(1, nmax):
        out[n + 1] = ((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1)
    return out


def shifted_legendre(n, t):
    return shifted_legendre_table(n, t)[n]


def shifted_legendre_derivative(n, t):
    """``d/dt L_n(t)`` from the recurrence ``(1 - x^2) P_n' = n (P_{n-1} - x P_n)``.

    Only for interior points; the endpoints use ``P_n'(+-1) = (+-1)^{n-1} n(n+1)/2``.
    """
    t = np.asarray(t, dtype=float)
    if n == 0:
        return np.zeros_like(t)
    x = 2.0 * t - 1.0
    table = shifted_legendre_table(n, t)
    with np.errstate(divide="ignore", invalid="ignore"):
        dp = n * (table[n - 1] - x * table[n]) / (1.0 - x * x)
    end = n * (n + 1) / 2.0
    dp = np.where(x == 1.0, end, dp)
    dp = np.where(x == -1.0, (-1.0) ** (n - 1) * end, dp)
    return 2.0 * dp


def eval_basis(j, t):
    """Value of the orthonormal polynomial ``P_j`` at ``t`` in [0, 1]."""
    j = _check_index(j)
    t = _check_domain(t)
    return np.sqrt(2 * j - 1) * shifted_legendre(j - 1, t)


def eval_antiderivative(j, c):
    """Exact ``int_0^c P_j(x) dx``.

    Uses ``int_0^c L_n = (L_{n+1}(c) - L_{n-1}(c)) / (2(2n + 1))`` for
    ``n >= 1``, which is exact and vanishes at ``c = 0`` and ``c = 1``.
    """
    j = _check_index(j)
    c = _check_domain(c)
    n = j - 1
    if n == 0:
        return np.array(c, dtype=float) if np.ndim(c) else float(c)
    table = shifted_legendre_table(n + 1, c)
    val = np.sqrt(2 * j - 1) * (table[n + 1] - table[n - 1]) / (2.0 * (2 * n + 1))
    return val if np.ndim(c) else float(val)


def xi_coefficient(j):
    """``1 / (2 sqrt((2j + 1)(2j - 1)))``, the off-diagonal of the Gauss generator."""
    j = _check_index(j)
    return 1.0 / (2.0 * np.sqrt((2 * j + 1) * (2 * j - 1)))


def basis_matrix(nodes, ncols):
    """``(i, j) -> P_j(nodes[i])`` for ``j = 1..ncols``."""
    nodes = _check_domain(np.atleast_1d(nodes))
    table = shifted_legendre_table(max(ncols - 1, 0), nodes)[:ncols]
    scale = np.sqrt(2.0 * np.arange(1, ncols + 1) - 1.0)
    return (table * scale[:, None]).T


def antiderivative_matrix(nodes, ncols):
    """``(i, j) -> int_0^{nodes[i]} P_j`` for ``j = 1..ncols``."""
    nodes = np.atleast_1d(np.asarray(nodes, dtype=float))
    out = np.empty((nodes.size, ncols))
    for j in range(1, ncols + 1):
        out[:, j - 1] = eval_antiderivative(j, nodes)
    return out


@dataclass(frozen=True)
class OrthonormalBasis:
    """The first ``size`` orthonormal shifted Legendre polynomials."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("basis size must be at least 1")

    def __call__(self, j, t):
        self._check(j)
        return eval_basis(j, t)

    def antiderivative(self, j, c):
        self._check(j)
        return eval_antiderivative(j, c)

    def degree(self, j):
        self._check(j)
        return j - 1

    def values(self, nodes):
        return basis_matrix(nodes, self.size)

    def integrals(self, nodes):
        return antiderivative_matrix(nodes, self.size)

    def _check(self, j):
        if not 1 <= j <= self.size:
            raise IndexError(f"basis index {j} outside 1..{self.size}")
