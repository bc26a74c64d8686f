import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistwalk.algebra import (
    SIGMA_0,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    CoinParams,
    assert_unitary,
    coin,
    is_unitary,
    pauli_decompose,
    pauli_reconstruct,
    rotation,
)

angles = st.floats(-4 * np.pi, 4 * np.pi, allow_nan=False)


def test_pauli_constants():
    for s in (SIGMA_X, SIGMA_Y, SIGMA_Z):
        assert np.allclose(s @ s, SIGMA_0)
    assert np.allclose(SIGMA_X @ SIGMA_Y, 1j * SIGMA_Z)


def test_rotation_known_values():
    assert np.allclose(rotation("z", 0), SIGMA_0)
    # R_y(pi) = -i sigma_y
    assert np.allclose(rotation("y", np.pi), -1j * SIGMA_Y)
    # 2pi rotation of a spinor is -I
    assert np.allclose(rotation("x", 2 * np.pi), -SIGMA_0)


def test_rotation_bad_axis():
    with pytest.raises(ValueError):
        rotation("w", 0.1)


@given(axis=st.sampled_from("xyz"), a=angles, b=angles)
@settings(max_examples=50)
def test_rotation_additive(axis, a, b):
    lhs = rotation(axis, a) @ rotation(axis, b)
    assert np.allclose(lhs, rotation(axis, a + b), atol=1e-10)


@given(d=angles, t=angles, p=angles, z=angles)
@settings(max_examples=50)
def test_coin_unitary(d, t, p, z):
    assert is_unitary(coin(CoinParams(d, t, p, z)))


def test_coin_explicit_entry():
    p = CoinParams(0.3, 0.7, 1.1, -0.4)
    u = coin(p)
    expect00 = (
        np.exp(1j * p.delta)
        * np.cos(p.theta / 2)
        * np.exp(-1j * (p.phi + p.zeta) / 2)
    )
    assert np.isclose(u[0, 0], expect00)
    expect10 = (
        np.exp(1j * p.delta)
        * np.sin(p.theta / 2)
        * np.exp(-1j * (p.phi - p.zeta) / 2)
    )
    assert np.isclose(u[1, 0], expect10)


@given(d=angles, t=angles, p=angles, z=angles)
@settings(max_examples=50)
def test_decompose_reconstruct_roundtrip(d, t, p, z):
    u = coin(CoinParams(d, t, p, z))
    assert np.allclose(pauli_reconstruct(pauli_decompose(u)), u, atol=1e-12)


def test_decompose_identity():
    c = pauli_decompose(SIGMA_0)
    assert c.d0 == 1 and c.d1 == c.d2 == c.d3 == 0


def test_assert_unitary_rejects():
    with pytest.raises(ValueError):
        assert_unitary(np.array([[1, 0], [0, 2]], dtype=complex))
    assert not is_unitary(2 * SIGMA_0)
