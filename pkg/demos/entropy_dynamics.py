"""Coin-position entanglement over time, discrete vs continuum.

Tracks the base-2 entropy of the coin reduced density matrix along a
walk and compares with the continuum closed forms.  Three takeaways:
the continuum entropy is monotone, the asymptotic value depends only on
the initial spinor, and sigma_y eigenspinors of the alternate walk stay
exactly unentangled forever.

Run:  python demos/entropy_dynamics.py
"""

import numpy as np

from twistwalk import (
    WalkSpec,
    continuum_entropy_xi,
    continuum_entropy_yy,
    convergence_diagnostics,
    gaussian_init,
    record_observables,
    recommended_n_sites,
)

EIG = np.array([1, 1j]) / np.sqrt(2)

# --- discrete entropy series for two initial spinors -------------------
spec = WalkSpec("YY", epsilon=0.04, alpha1=1.0, theta=np.pi / 3)
steps = 120
for spinor, label in [(np.array([1.0, 0.0]), "(1, 0)"), (EIG, "(1, i)/sqrt2")]:
    n = recommended_n_sites(spec, steps, 1.0)
    state = gaussian_init(n, spec.dx, 0.0, 1.0, spinor)
    series = record_observables(state, spec, steps, stride=1)
    d = convergence_diagnostics(series.times, series.entropy)
    print(f"initial spinor {label}:")
    print(f"  S(0) = {series.entropy[0]:.2e}, S(end) = {series.entropy[-1]:.4f}")
    print(
        f"  S_inf = {d.s_infinity:.4f}, tau_5% = {d.tau_5pct:.2f}, "
        f"extrema in transient = {d.n_extrema}"
    )
print()

# --- continuum closed forms -------------------------------------------
print("continuum closed forms, spinor (1, 1)/sqrt2:")
print(f"{'t':>5} {'S_homogeneous':>14} {'S_alternate':>12}")
for t in (0.0, 0.5, 1.0, 2.0, 5.0, 10.0):
    s_yy = continuum_entropy_yy(t, 1.0, np.pi / 3, [1, 1])
    s_xi = continuum_entropy_xi(t, 1.0, 1.0, [1, 1])
    print(f"{t:5.1f} {s_yy:14.6f} {s_xi:12.6f}")
print()

worst = max(abs(continuum_entropy_xi(t, 1.0, 1.0, EIG)) for t in np.linspace(0, 10, 200))
print(f"alternate-walk eigenspinor (1, i)/sqrt2: max S over t in [0,10] = {worst:.1e}")
print("eigenspinors ride a single band, so nothing entangles them.")
