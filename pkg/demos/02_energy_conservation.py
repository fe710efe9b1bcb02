"""Energy drift as silent stages are added.

For a polynomial Hamiltonian of degree nu the method HBVM(k, s) conserves
energy exactly once k >= nu*s/2; for the pendulum the drift decays to
round-off as k grows.  Gauss-4 (k = s = 2) is symplectic but drifts.
"""
import numpy as np

from hbvm import build_hbvm, builtin, integrate

for name, h, steps, ks in [("quartic_oscillator", 0.1, 500, range(2, 7)),
                           ("sextic_oscillator", 0.1, 500, range(2, 9)),
                           ("pendulum", 0.2, 1000, range(2, 13, 2))]:
    sys = builtin(name)
    print(f"\n{name} (nu={sys.poly_degree}), s=2, h={h}, {steps} steps")
    for k in ks:
        traj = integrate(sys, build_hbvm(k, 2), sys.default_y0, h, steps)
        print(f"  k={k:2d}  max |H - H0| = {traj.max_drift:.3e}")

# %% Gauss-4 drift amplitude shrinks like h^4
sys = builtin("quartic_oscillator")
d = [integrate(sys, build_hbvm(2, 2), sys.default_y0, h, int(round(50 / h))).max_drift for h in (0.1, 0.05)]
print(f"\nGauss-4 drift h=0.1: {d[0]:.3e}, h=0.05: {d[1]:.3e}, ratio {d[0] / d[1]:.2f}")

# %% optional picture
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for k in (2, 3, 4):
        traj = integrate(sys, build_hbvm(k, 2), sys.default_y0, 0.1, 500)
        ax.semilogy(traj.times, np.abs(traj.energy_drift) + 1e-17, label=f"HBVM({k},2)")
    ax.set_xlabel("t")
    ax.set_ylabel("|H - H0|")
    ax.legend()
    fig.tight_layout()
    fig.savefig("quartic_drift.png", dpi=120)
    print("wrote quartic_drift.png")
