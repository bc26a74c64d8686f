import dataclasses

import numpy as np
import pytest

from twistwalk.continuum import (
    ContinuumModel,
    check_constraints,
    continuum_spectrum,
    convergence_study,
    evolve_continuum,
    family_unitary_at_k,
    numeric_limit_check,
    xi_family,
    yy_family,
)
from twistwalk.lattice import WalkSpec, gaussian_init
from twistwalk.momentum import unitary_at_k

EIG = np.array([1, 1j]) / np.sqrt(2)


def test_model_from_walk_spec():
    yy = ContinuumModel.from_walk_spec(WalkSpec("YY", alpha1=1.5, theta=0.4, mass=2.0))
    assert yy.c1 == pytest.approx(-3.0)
    assert yy.c2 == pytest.approx(np.sin(0.4))
    assert yy.mass == 2.0
    xi = ContinuumModel.from_walk_spec(WalkSpec("XI", alpha1=1.0, theta1=0.5))
    assert xi.c1 == pytest.approx(-2.25)
    assert xi.c2 == 0.0


def test_continuum_spectrum_matches_hamiltonian():
    model = ContinuumModel(mass=1.3, c1=-0.7, c2=0.2)
    for k in (-2.0, 0.0, 0.5):
        lp, lm = continuum_spectrum(model, k)
        eigs = np.linalg.eigvalsh(model.hamiltonian(k))
        assert sorted([lp, lm]) == pytest.approx(sorted(eigs))


def test_yy_family_satisfies_theorem():
    rep = check_constraints(yy_family(1.0, np.pi / 6))
    assert rep.satisfied
    assert rep.branch == "mixed"
    assert rep.max_residual < 1e-9


def test_xi_family_satisfies_theorem():
    rep = check_constraints(xi_family(0.7))
    assert rep.satisfied


def test_perturbed_family_fails():
    base = yy_family(1.0, np.pi / 6)
    for angle in ("delta_b", "theta_a0", "theta_b0", "zeta_b", "phi_b"):
        fam = dataclasses.replace(base, **{angle: getattr(base, angle) + 0.1})
        rep = check_constraints(fam)
        assert not rep.satisfied
        assert rep.max_residual >= 0.04


def test_family_unitary_matches_walk_spec():
    alpha1, theta, eps = 0.8, 0.5, 0.04
    fam = yy_family(alpha1, theta)
    spec = WalkSpec("YY", epsilon=eps, alpha1=alpha1, theta=theta)
    for k in (0.3, -1.1):
        assert np.allclose(
            family_unitary_at_k(fam, k, eps), unitary_at_k(spec, k), atol=1e-12
        )


def test_numeric_limit_check_converges():
    spec = WalkSpec("YY", alpha1=1.0, theta=np.pi / 6)
    model = ContinuumModel.from_walk_spec(spec)
    res = numeric_limit_check(spec, model, [1e-2, 1e-3, 1e-4], k=0.7)
    assert res.slope_hamiltonian >= 0.4
    assert res.slope_identity == pytest.approx(1.0, abs=0.3)
    assert res.converged


def test_numeric_limit_check_detects_wrong_model():
    spec = WalkSpec("YY", alpha1=1.0, theta=np.pi / 6)
    wrong = ContinuumModel(0.0, +2.0, -np.sin(np.pi / 6))   # flipped sign
    res = numeric_limit_check(spec, wrong, [1e-2, 1e-3, 1e-4], k=0.7)
    assert not res.converged


def test_evolve_continuum_basics():
    model = ContinuumModel(mass=0.6, c1=-1.0, c2=0.3)
    st = gaussian_init(128, 0.1, 0.0, 0.4, EIG)
    out0 = evolve_continuum(st, model, 0.0)
    assert np.allclose(out0.amplitudes, st.amplitudes, atol=1e-12)
    out = evolve_continuum(st, model, 1.3)
    assert out.norm() == pytest.approx(1.0, abs=1e-12)
    # group property: evolving 0.8 then 0.5 equals evolving 1.3
    two = evolve_continuum(evolve_continuum(st, model, 0.8), model, 0.5)
    assert np.allclose(two.amplitudes, out.amplitudes, atol=1e-10)


def test_evolve_continuum_free_particle_drift():
    # pure c1: the +1 eigenstate of sigma_y picks up phase e^{-i c1 k t},
    # a rigid displacement by c1 t (here -1.5 * 0.5).
    model = ContinuumModel(mass=0.0, c1=-1.5, c2=0.0)
    st = gaussian_init(512, 0.05, 0.0, 0.2, EIG)
    out = evolve_continuum(st, model, 0.5)
    rho = np.sum(np.abs(out.amplitudes) ** 2, axis=0)
    m1 = np.sum(st.positions * rho)
    assert m1 == pytest.approx(-0.75, abs=1e-3)


def test_convergence_study_decreases():
    spec = WalkSpec("YY", alpha1=1.0, theta=np.pi / 2)
    rows = convergence_study(spec, [0.05, 0.0125], 0.5, 0.7, EIG)
    errs = [r.l2_error for r in rows]
    assert errs[1] < errs[0]


def test_convergence_study_integer_guard():
    spec = WalkSpec("YY", alpha1=1.0, theta=np.pi / 2)
    with pytest.raises(ValueError):
        convergence_study(spec, [0.03], 1.0, 0.7, EIG)
