"""From a k-stage collocation method to HBVM(k, s) by filtering.

Multiplying the collocation matrix on the right by Ps Ps^T Omega keeps only
its action on polynomials of degree < s; the result is the HBVM(k, s)
tableau on the same nodes.
"""
import numpy as np

from hbvm import build_collocation, build_hbvm, filter_collocation, make_rule

for kind, k, s in [("gauss", 4, 2), ("gauss", 6, 3), ("lobatto", 5, 2)]:
    rule = make_rule(kind, k)
    col = build_collocation(rule)
    hb = build_hbvm(k, s, rule)
    filt = filter_collocation(col, s)
    print(f"{kind} k={k} s={s}: |Acal Ps - Is| = {np.max(np.abs(col.Acal @ hb.Ps - hb.Is)):.1e}, "
          f"|filtered - HBVM| = {np.max(np.abs(filt.A - hb.A)):.1e}, "
          f"rank(Acal) = {np.linalg.matrix_rank(col.Acal)}, rank(A) = {np.linalg.matrix_rank(filt.A, tol=1e-12)}")
