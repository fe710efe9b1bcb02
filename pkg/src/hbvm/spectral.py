"""Spectrum of the HBVM Butcher matrix versus the Gauss generator matrix.

The s x s matrix ``X_s`` (1/2 in the corner, ``+-xi_j`` off the diagonal)
has the eigenvalues of the s-stage Gauss-Legendre Butcher matrix.  The
columns of ``Ps1`` span an invariant subspace of every HBVM(k, s) matrix
``A``, with ``A @ Ps1 == Ps1 @ Xtilde_s``; so the nonzero spectrum of ``A``
is that of ``X_s`` and the remaining k - s eigenvalues vanish.
"""

from dataclasses import dataclass, field

import numpy as np

from ._io import dumps_json
from .legendre import xi_coefficient
from .smalllinalg import eigenvalues, mat_mul, sort_eigenvalues

EIG_TOL = 1e-10
GAP_RATIO = 1e4


def build_Xs(s):
    """The s x s Gauss generator matrix."""
    if s < 1:
        raise ValueError(f"s must be at least 1, got {s}")
    X = np.zeros((s, s))
    X[0, 0] = 0.5
    for j in range(1, s):
        xi = xi_coefficient(j)
        X[j, j - 1] = xi
        X[j - 1, j] = -xi
    return X


def build_Xhat(s):
    """``X_s`` with an extra last row ``(0, ..., 0, xi_s)``, shape (s+1, s).

    Satisfies ``Is == Ps1 @ Xhat`` for any abscissae.
    """
    X = np.zeros((s + 1, s))
    X[:s, :] = build_Xs(s)
    X[s, s - 1] = xi_coefficient(s)
    return X


def build_Xtilde(s):
    """``Xhat`` padded with a zero last column, shape (s+1, s+1)."""
    X = np.zeros((s + 1, s + 1))
    X[:, :s] = build_Xhat(s)
    return X


def subspace_residual(tab):
    """Max-norm of ``A @ Ps1 - Ps1 @ Xtilde_s``."""
    lhs = mat_mul(tab.A, tab.Ps1)
    rhs = mat_mul(tab.Ps1, build_Xtilde(tab.s))
    return float(np.max(np.abs(lhs - rhs)))


def integral_identity_residual(tab):
    """Max-norm of ``Is - Ps1 @ Xhat_s``."""
    return float(np.max(np.abs(tab.Is - mat_mul(tab.Ps1, build_Xhat(tab.s)))))


@dataclass
class SpectralReport:
    k: int
    s: int
    subspace_residual: float
    nonzero_eigs_A: np.ndarray
    eigs_Xs: np.ndarray
    zero_tail_max: float
    max_mismatch: float
    gap_ratio: float
    matched: bool
    tol: float = field(default=EIG_TOL)

    @property
    def gap_ok(self):
        return self.k == self.s or self.gap_ratio > GAP_RATIO

    def to_dict(self):
        def pairs(z):
            return [{"re": float(v.real), "im": float(v.imag)} for v in z]

        return {
            "k": self.k,
            "s": self.s,
            "subspace_residual": self.subspace_residual,
            "nonzero_eigs_A": pairs(self.nonzero_eigs_A),
            "eigs_Xs": pairs(self.eigs_Xs),
            "zero_tail_max": self.zero_tail_max,
            "max_mismatch": self.max_mismatch,
            "gap_ratio": self.gap_ratio if np.isfinite(self.gap_ratio) else None,
            "gap_ok": self.gap_ok,
            "matched": self.matched,
        }

    def to_json(self):
        return dumps_json(self.to_dict())


def split_spectrum(eigs, s):
    """Split into the s largest-magnitude eigenvalues and the rest.

    Both parts come back in the deterministic (real desc, imag desc) order,
    followed by the magnitude ratio between the s-th and (s+1)-th largest.
    """
    eigs = np.asarray(eigs, dtype=complex)
    order = np.argsort(-np.abs(eigs), kind="stable")
    mags = np.abs(eigs)[order]
    big = sort_eigenvalues(eigs[order[:s]])
    small = sort_eigenvalues(eigs[order[s:]])
    if len(eigs) > s:
        ratio = mags[s - 1] / mags[s] if mags[s] > 0 else np.inf
    else:
        ratio = np.inf
    return big, small, float(ratio)


def isospectral_report(tab, tol=EIG_TOL):
    """Compare the nonzero spectrum of ``tab.A`` with that of ``X_s``."""
    s = tab.s
    big, small, ratio = split_spectrum(eigenvalues(tab.A), s)
    ref = eigenvalues(build_Xs(s))
    mismatch = float(np.max(np.abs(big - ref)))
    tail = float(np.max(np.abs(small))) if small.size else 0.0
    return SpectralReport(
        k=tab.k,
        s=s,
        subspace_residual=subspace_residual(tab),
        nonzero_eigs_A=big,
        eigs_Xs=ref,
        zero_tail_max=tail,
        max_mismatch=mismatch,
        gap_ratio=ratio,
        matched=bool(mismatch <= tol and tail <= tol),
        tol=tol,
    )
