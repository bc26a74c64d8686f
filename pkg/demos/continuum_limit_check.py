"""Numerical verification of the continuum limit, three ways.

1. Constraint check: the coin-angle families of both walk variants
   satisfy the algebraic existence conditions for a continuum limit;
   knocking any constrained angle off its manifold fails the check with
   a residual of the same size as the perturbation.
2. Generator residual: || (U(eps) - I)/eps + 2i H(k) || -> 0 at order
   sqrt(eps), confirming the limiting Hamiltonian mode by mode.
3. Wavepacket convergence: the L2 distance between the walked density
   and the exact continuum evolution shrinks as eps -> 0.

Run:  python demos/continuum_limit_check.py   (~30 s)
"""

import dataclasses

import numpy as np

from twistwalk import (
    ContinuumModel,
    WalkSpec,
    check_constraints,
    convergence_study,
    numeric_limit_check,
    xi_family,
    yy_family,
)

# --- 1. algebraic constraints -----------------------------------------
rep = check_constraints(yy_family(1.0, np.pi / 6))
print(f"homogeneous family: satisfied={rep.satisfied}, branch={rep.branch}, "
      f"max residual={rep.max_residual:.1e}")
rep = check_constraints(xi_family(1.0))
print(f"alternate family:   satisfied={rep.satisfied}, branch={rep.branch}")

broken = dataclasses.replace(yy_family(1.0, np.pi / 6), zeta_b=-np.pi / 2 + 0.2)
rep = check_constraints(broken)
print(f"perturbed (zeta_b + 0.2): satisfied={rep.satisfied}, "
      f"max residual={rep.max_residual:.3f}\n")

# --- 2. generator residuals -------------------------------------------
spec = WalkSpec("YY", alpha1=1.0, theta=np.pi / 6)
model = ContinuumModel.from_walk_spec(spec)
print(f"limit Hamiltonian: H(k) = ({model.c1:+.1f} k {model.c2:+.3f} k^2) sigma_y")
print(f"{'k':>6} {'r(1e-2)':>10} {'r(1e-3)':>10} {'r(1e-4)':>10} {'slope':>7}")
for k in (0.3, 1.0, 1.7):
    res = numeric_limit_check(spec, model, [1e-2, 1e-3, 1e-4], k)
    r = res.residual_hamiltonian
    print(f"{k:6.2f} {r[0]:10.4f} {r[1]:10.4f} {r[2]:10.4f} "
          f"{res.slope_hamiltonian:7.3f}")
print("slope ~ 0.5: the residual vanishes at order sqrt(eps)\n")

# --- 3. wavepacket convergence ----------------------------------------
print("L2 density error, walk vs exact continuum evolution (t_final = 1):")
spec = WalkSpec("YY", alpha1=1.0, theta=np.pi / 2)
rows = convergence_study(
    spec, [0.04, 0.01, 0.0025], 1.0, 0.7, np.array([1, 1j]) / np.sqrt(2)
)
print(f"{'eps':>8} {'sites':>7} {'steps':>6} {'L2 error':>10}")
for r in rows:
    print(f"{r.epsilon:8.4f} {r.n_sites:7d} {r.n_steps:6d} {r.l2_error:10.5f}")
orders = np.diff(np.log([r.l2_error for r in rows])) / np.diff(
    np.log([r.epsilon for r in rows])
)
print(f"observed convergence orders between rows: {np.round(orders, 2)}")
