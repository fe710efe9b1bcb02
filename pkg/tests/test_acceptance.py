"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (the summary is printed at the end of
the session) or ``python tests/test_acceptance.py`` for the plain listing.
"""

import time

import numpy as np
import pytest

from golden import gauss_butcher
from hbvm.integrator import SolveSettings, convergence_order, integrate, symmetry_check
from hbvm.problems import builtin
from hbvm.quadrature import gauss_rule, make_rule
from hbvm.spectral import isospectral_report, integral_identity_residual, subspace_residual
from hbvm.tableau import build_collocation, build_hbvm, filter_collocation

RESULTS = {}
SETTINGS = SolveSettings(tol=1e-14, max_iter=100)


def record(key, ok, detail):
    RESULTS[key] = (bool(ok), detail)
    assert ok, f"criterion {key}: {detail}"


def test_1_isospectral_property():
    start = time.perf_counter()
    grid = [("gauss", k, s) for s in range(1, 5) for k in range(s, 13)]
    grid += [("lobatto", k, s) for s in range(1, 4) for k in range(s + 1, 11) if 2 * k - 3 >= 2 * s - 1]
    worst_res = worst_mis = worst_tail = 0.0
    failures = []
    for kind, k, s in grid:
        tab = build_hbvm(k, s, kind)
        rep = isospectral_report(tab)
        worst_res = max(worst_res, rep.subspace_residual)
        worst_mis = max(worst_mis, rep.max_mismatch)
        worst_tail = max(worst_tail, rep.zero_tail_max)
        if rep.subspace_residual > 1e-12 or rep.max_mismatch > 1e-10 or rep.zero_tail_max > 1e-10:
            failures.append((kind, k, s))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 5.0
    record("1 isospectral", ok,
           f"{len(grid)} tableaux, residual {worst_res:.1e} <= 1e-12, eig mismatch {worst_mis:.1e} <= 1e-10, "
           f"zero tail {worst_tail:.1e} <= 1e-10, {elapsed:.2f}s < 5s, failures {failures}")


def test_2_gauss_reduction():
    worst = 0.0
    for s in (1, 2, 3):
        A, b, c = gauss_butcher(s)
        t = build_hbvm(s, s, gauss_rule(s))
        worst = max(worst, np.max(np.abs(t.A - A)), np.max(np.abs(t.b - b)), np.max(np.abs(t.c - c)))
    record("2 gauss-reduction", worst <= 1e-12, f"max entry deviation {worst:.1e} <= 1e-12 for s=1,2,3")


def test_3_collocation_filtering():
    worst_is = worst_a = 0.0
    for kind, k, s in [("gauss", 2, 2), ("gauss", 4, 2), ("gauss", 6, 3), ("lobatto", 4, 2)]:
        rule = make_rule(kind, k)
        col = build_collocation(rule)
        hb = build_hbvm(k, s, rule)
        worst_is = max(worst_is, np.max(np.abs(col.Acal @ hb.Ps - hb.Is)))
        filt = col.Acal @ hb.Ps @ hb.Ps.T @ hb.Omega
        worst_a = max(worst_a, np.max(np.abs(filt - hb.Is @ hb.Ps.T @ hb.Omega)),
                      np.max(np.abs(filter_collocation(col, s).A - hb.A)))
    ok = worst_is <= 1e-12 and worst_a <= 1e-12
    record("3 collocation-filter", ok, f"|Acal Ps - Is| {worst_is:.1e}, |filtered - HBVM| {worst_a:.1e} <= 1e-12")


def _drift(name, k, s, h=0.1, steps=500):
    sys = builtin(name)
    traj = integrate(sys, build_hbvm(k, s), sys.default_y0, h, steps, SETTINGS)
    return traj.max_drift, abs(traj.energies[0])


def test_4_conservation_threshold():
    start = time.perf_counter()
    quartic = {k: _drift("quartic_oscillator", k, 2) for k in range(2, 7)}
    sextic = {k: _drift("sextic_oscillator", k, 2) for k in range(2, 9)}
    elapsed = time.perf_counter() - start
    q_ok = all(quartic[k][0] <= 5e-12 for k in (4, 5, 6)) and quartic[2][0] > 1e-8
    s_ok = all(sextic[k][0] <= 5e-12 * max(1.0, sextic[k][1]) for k in (6, 7, 8)) and sextic[2][0] > 1e-8
    ok = q_ok and s_ok and elapsed < 10.0
    qtxt = ", ".join(f"k={k}:{d:.1e}" for k, (d, _) in quartic.items())
    stxt = ", ".join(f"k={k}:{d:.1e}" for k, (d, _) in sextic.items())
    record("4 conservation", ok, f"quartic [{qtxt}]; sextic [{stxt}]; {elapsed:.2f}s < 10s")


def _slope(name, k, s):
    study = convergence_order(builtin(name), build_hbvm(k, s), [0.1 / 2**j for j in range(5)], 1.0,
                              settings=SETTINGS)
    return study


def test_5_order():
    cases = [("harmonic", 1, 1, 2, 0.2), ("harmonic", 3, 1, 2, 0.2), ("harmonic", 2, 2, 4, 0.2),
             ("harmonic", 4, 2, 4, 0.2), ("kepler", 6, 3, 6, 0.3)]
    parts = []
    ok = True
    for name, k, s, order, tol in cases:
        study = _slope(name, k, s)
        good = abs(study.slope - order) <= tol
        ok &= good
        extra = f" (excluded round-off h={study.excluded})" if study.excluded else ""
        parts.append(f"{name} HBVM({k},{s}) slope {study.slope:.3f} vs {order}+-{tol}{extra}")
    record("5 order", ok, "; ".join(parts))


def test_6_integral_identity():
    worst = max(integral_identity_residual(build_hbvm(k, s, "gauss")) for s in range(1, 5) for k in range(s, 13))
    record("6 integral-identity", worst <= 1e-13, f"max |Is - Ps1 Xhat| {worst:.1e} <= 1e-13")


def test_7_symmetry():
    worst = 0.0
    for name in ("harmonic", "pendulum", "quartic_oscillator"):
        sys = builtin(name)
        for k, s in ((2, 2), (4, 2), (6, 2)):
            worst = max(worst, symmetry_check(sys, build_hbvm(k, s), sys.default_y0, 0.1, SETTINGS))
    record("7 symmetry", worst <= 1e-11, f"max forward/backward defect {worst:.1e} <= 1e-11")


def test_8_practical_conservation():
    d2, _ = _drift("pendulum", 2, 2, h=0.2, steps=1000)
    d12, _ = _drift("pendulum", 12, 2, h=0.2, steps=1000)
    ok = d12 <= 1e-3 * d2 and d12 < 1e-10
    record("8 practical-conservation", ok, f"pendulum drift k=2 {d2:.1e}, k=12 {d12:.1e} (ratio {d12 / d2:.1e})")


def test_9_gauss_drift_scaling():
    g1, _ = _drift("quartic_oscillator", 2, 2, h=0.1, steps=500)
    g2, _ = _drift("quartic_oscillator", 2, 2, h=0.05, steps=1000)
    e1, _ = _drift("quartic_oscillator", 4, 2, h=0.1, steps=500)
    e2, _ = _drift("quartic_oscillator", 4, 2, h=0.05, steps=1000)
    ratio = g1 / g2
    ok = 16 * 0.7 <= ratio <= 16 * 1.3 and e1 <= 5e-12 and e2 <= 5e-12
    record("9 drift-scaling", ok,
           f"Gauss-4 drift {g1:.2e} -> {g2:.2e}, ratio {ratio:.2f} in [11.2, 20.8]; HBVM(4,2) {e1:.1e}, {e2:.1e}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
    for key in sorted(RESULTS, key=lambda s: int(s.split()[0])):
        ok, detail = RESULTS[key]
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
