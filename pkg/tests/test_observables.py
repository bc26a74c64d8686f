import numpy as np
import pytest

from twistwalk.lattice import SpinorField, WalkSpec, gaussian_init
from twistwalk.observables import (
    bloch_spinor,
    continuum_entropy_xi,
    continuum_entropy_yy,
    convergence_diagnostics,
    density,
    entanglement_entropy,
    moments,
    record_observables,
    theory_m1_yy,
    theory_variance_yy,
)

EIG = np.array([1, 1j]) / np.sqrt(2)


def test_bloch_spinor():
    assert np.allclose(bloch_spinor(0.0, 0.0), [1, 0])
    assert np.allclose(bloch_spinor(np.pi, 0.0), [0, 1], atol=1e-15)
    assert np.allclose(bloch_spinor(np.pi / 2, np.pi / 2), EIG)


def test_density_and_moments():
    st = gaussian_init(512, 0.05, 0.3, 0.25, EIG)
    prof = density(st)
    assert np.sum(prof.rho) == pytest.approx(1.0)
    m1, m2, v = moments(prof)
    assert m1 == pytest.approx(0.3, abs=1e-6)
    assert v == pytest.approx(0.25, rel=1e-3)
    assert m2 == pytest.approx(v + m1 * m1)


def test_theory_moments_at_zero():
    assert theory_m1_yy(0.0, 0.4, 1.0, EIG) == 0.4
    assert theory_variance_yy(0.0, 0.7, 1.0, 0.3, EIG) == pytest.approx(0.7)
    with pytest.raises(ValueError):
        theory_variance_yy(1.0, -0.5, 1.0, 0.3, EIG)


def test_theory_m1_eigenstate_extremal():
    # Im[psi+ conj(psi-)] = -1/2 on (1, i): maximal drift 4 t a (-1/2)
    assert theory_m1_yy(2.0, 0.0, 1.5, EIG) == pytest.approx(-6.0)
    assert theory_m1_yy(2.0, 0.0, 1.5, [1, 0]) == 0.0


def test_entropy_product_state_zero():
    st = gaussian_init(64, 0.1, 0.0, 0.5, [0.6, 0.8j])
    assert entanglement_entropy(st) < 1e-12


def test_entropy_maximally_entangled_one_bit():
    a = np.zeros((2, 4), dtype=complex)
    a[0, 0] = a[1, 2] = 1 / np.sqrt(2)
    assert entanglement_entropy(SpinorField(a, 1.0)) == pytest.approx(1.0)


def test_continuum_entropy_initial_purity():
    for sp in (EIG, [1, 0], [0.3, 0.4 + 0.5j]):
        assert continuum_entropy_yy(0.0, 1.0, 0.5, sp) == pytest.approx(0.0, abs=1e-12)
        assert continuum_entropy_xi(0.0, 1.0, 1.0, sp) == pytest.approx(0.0, abs=1e-12)


def test_continuum_entropy_yy_saturates():
    # balanced real spinor decoheres toward the maximally mixed coin
    s = continuum_entropy_yy(50.0, 1.0, 0.5, [1, 1])
    assert s == pytest.approx(1.0, abs=1e-2)


def test_continuum_entropy_xi_eigenstate_always_pure():
    for t in np.linspace(0, 10, 50):
        assert continuum_entropy_xi(t, 1.0, 1.0, EIG) == pytest.approx(0.0, abs=1e-12)


def test_continuum_entropy_guards():
    with pytest.raises(ValueError):
        continuum_entropy_xi(1.0, 1.0, -1.0, EIG)


def test_record_observables_columns(tmp_path):
    spec = WalkSpec("YY", epsilon=0.04, alpha1=1.0, theta=0.4)
    st = gaussian_init(256, spec.dx, 0.0, 0.5, EIG)
    series = record_observables(st, spec, 10, mu_x=0.0, sigma2=0.5, spinor=EIG)
    assert series.times[0] == 0.0
    assert series.times[-1] == pytest.approx(10 * spec.time_per_step)
    assert series.m1[0] == pytest.approx(series.m1_theory[0], abs=1e-9)
    assert series.variance[0] == pytest.approx(series.variance_theory[0], rel=1e-3)
    path = tmp_path / "obs.csv"
    series.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,m1,m1_theory,V,V_theory,S"
    assert len(lines) == 12


def test_record_observables_xi_theory_nan():
    spec = WalkSpec("XI", epsilon=0.04, alpha1=0.5, theta1=0.3)
    st = gaussian_init(128, spec.dx, 0.0, 0.5, EIG)
    series = record_observables(st, spec, 3)
    assert np.all(np.isnan(series.m1_theory))
    assert np.all(np.isnan(series.variance_theory))
    assert not np.any(np.isnan(series.entropy))


def test_convergence_diagnostics_synthetic():
    t = np.linspace(0, 20, 400)
    s = 0.8 - 0.5 * np.exp(-t / 3) * np.cos(2 * t)
    d = convergence_diagnostics(t, s)
    assert d.s_infinity == pytest.approx(0.8, abs=0.01)
    assert 0 < d.tau_5pct < 20
    assert d.n_extrema >= 3
    flat = convergence_diagnostics(t, np.full_like(t, 0.5))
    assert flat.tau_5pct == 0.0
    assert flat.n_extrema == 0
    assert flat.s_infinity == 0.5


def test_convergence_diagnostics_short_series():
    with pytest.raises(ValueError):
        convergence_diagnostics([0, 1], [0.1, 0.2])
