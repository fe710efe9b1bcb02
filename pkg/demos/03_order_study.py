"""Observed order 2s, independent of k."""
from hbvm import build_hbvm, builtin, convergence_order

hs = [0.1 / 2**j for j in range(5)]
for name, k, s in [("harmonic", 1, 1), ("harmonic", 3, 1), ("harmonic", 2, 2),
                   ("harmonic", 4, 2), ("kepler", 3, 3), ("kepler", 6, 3)]:
    study = convergence_order(builtin(name), build_hbvm(k, s), hs, 1.0)
    print(f"{name:9s} HBVM({k},{s}): slope {study.slope:.3f}")
    for h, e, p in zip(study.h, study.errors, study.observed_orders):
        print(f"    h={h:.5f}  err={e:.3e}  p={p:.3f}")
    if study.excluded:
        print("    left out (round-off):", study.excluded)
