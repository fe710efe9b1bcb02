"""HBVM(k, s) tableaux and their spectra.

Build a few tableaux, look at the Butcher matrix, and check that adding
silent stages (k > s) only adds zero eigenvalues: the nonzero part of the
spectrum stays that of the s-stage Gauss method.
"""
import numpy as np

from hbvm import build_hbvm, build_Xs, isospectral_report
from hbvm.smalllinalg import eigenvalues

np.set_printoptions(precision=6, suppress=True, linewidth=110)

# %% k = s on Gauss nodes is the Gauss-Legendre method itself
t = build_hbvm(2, 2, "gauss")
print("HBVM(2,2) = Gauss-4")
print("c =", t.c)
print("A =\n", t.A)

# %% silent stages: A keeps rank s
t = build_hbvm(6, 2, "gauss")
print("\nHBVM(6,2), rank", np.linalg.matrix_rank(t.A, tol=1e-12))
print("eig(A)   =", eigenvalues(t.A))
print("eig(X_2) =", eigenvalues(build_Xs(2)))

# %% a sweep over k, both node families
print("\n kind     k  s  residual   mismatch   zero-tail  matched")
for kind in ("gauss", "lobatto"):
    for k in range(4, 11, 2):
        rep = isospectral_report(build_hbvm(k, 3, kind))
        print(f" {kind:8s} {k:2d}  3  {rep.subspace_residual:.2e}  {rep.max_mismatch:.2e}"
              f"  {rep.zero_tail_max:.2e}  {rep.matched}")
