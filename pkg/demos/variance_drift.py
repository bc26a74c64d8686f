"""Simulated first moment and variance against their closed forms.

Three parameter sets probing different corners of the closed-form
predictions m1(t) = mu + 4 t alpha_1 Im[psi_+ conj(psi_-)] and
V(t) = sigma^2 + (sin^2 theta / sigma^2) t^2 + 4 alpha_1^2 (1 - 4 Im^2) t^2:
a pure-twist dispersing set (alpha_1 = 0), a pure-drift set (theta = 0)
and a generic mixed one.

Run:  python demos/variance_drift.py
"""

import numpy as np

from twistwalk import (
    WalkSpec,
    gaussian_init,
    record_observables,
    recommended_n_sites,
)

EPS = 0.01
STEPS = 300

SETS = [
    ("pure twist", 0.0, np.pi / 2, np.array([1, 1j]), 0.1),
    ("pure drift", 0.9, 0.0, np.array([1, 0]), 3.0),
    ("mixed", 1.1, 2.0, np.array([1, 1 + 1j]), 0.3),
]

for label, alpha1, theta, spinor, sigma2 in SETS:
    spinor = spinor / np.linalg.norm(spinor)
    spec = WalkSpec("YY", epsilon=EPS, alpha1=alpha1, theta=theta)
    n = recommended_n_sites(spec, STEPS, sigma2)
    state = gaussian_init(n, spec.dx, 0.0, sigma2, spinor)
    series = record_observables(
        state, spec, STEPS, mu_x=0.0, sigma2=sigma2, spinor=spinor, stride=60
    )

    print(f"=== {label}: alpha1={alpha1}, theta={theta:.2f}, sigma^2={sigma2} ===")
    print(f"{'t':>6} {'m1 sim':>9} {'m1 th':>9} {'V sim':>9} {'V th':>9}")
    for row in zip(
        series.times, series.m1, series.m1_theory,
        series.variance, series.variance_theory,
    ):
        print("{:6.2f} {:9.4f} {:9.4f} {:9.4f} {:9.4f}".format(*row))
    rel = abs(series.variance[-1] - series.variance_theory[-1]) / series.variance_theory[-1]
    print(f"final-time variance error: {rel:.1%}\n")

print("note how the narrow packet (sigma^2 = 0.1) disperses fastest: the")
print("twist term sin^2(theta)/sigma^2 grows as the initial width shrinks.")
