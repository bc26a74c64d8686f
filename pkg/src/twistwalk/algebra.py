"""Exact 2x2 complex matrix algebra for the walk coins.

Pauli matrices, spin-1/2 axis rotations, the general four-angle coin and
Pauli-basis decomposition.  Everything here is a pure function on small
numpy arrays; all unitaries are plain (2, 2) complex128 ndarrays.

Rotation convention: R_a(t) = exp(-i t sigma_a / 2).  This is the choice
that reproduces the explicit coin matrix entries, e.g.
C(d, t, p, z)[0, 0] = e^{i d} cos(t/2) e^{-i(p+z)/2}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "SIGMA_0",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "CoinParams",
    "PauliCoeffs",
    "rotation",
    "coin",
    "pauli_decompose",
    "pauli_reconstruct",
    "is_unitary",
    "assert_unitary",
]

SIGMA_0 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

_AXIS = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

UNITARY_TOL = 1e-8


@dataclass(frozen=True)
class CoinParams:
    """Four-angle U(2) coin parameterization, all angles in radians."""

    delta: float
    theta: float
    phi: float
    zeta: float


@dataclass(frozen=True)
class PauliCoeffs:
    """Coefficients of (sigma_0, sigma_x, sigma_y, sigma_z)."""

    d0: complex
    d1: complex
    d2: complex
    d3: complex


def rotation(axis: str, angle: float) -> NDArray[np.complex128]:
    """Spin-1/2 rotation exp(-i*angle*sigma_axis/2) around x, y or z."""
    try:
        sigma = _AXIS[axis]
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}") from None
    return np.cos(angle / 2) * SIGMA_0 - 1j * np.sin(angle / 2) * sigma


def coin(p: CoinParams) -> NDArray[np.complex128]:
    """General coin e^{i delta} R_z(zeta) R_y(theta) R_z(phi)."""
    return np.exp(1j * p.delta) * (
        rotation("z", p.zeta) @ rotation("y", p.theta) @ rotation("z", p.phi)
    )


def pauli_decompose(u: NDArray[np.complex128]) -> PauliCoeffs:
    """Project a 2x2 matrix onto the Pauli basis.

    d_a = Tr(sigma_a U) / 2; in particular d0 = Tr(U)/2, the quantity
    that fully determines a walk's two-band spectrum.
    """
    u = np.asarray(u, dtype=np.complex128)
    return PauliCoeffs(
        d0=complex(np.trace(u)) / 2,
        d1=complex(np.trace(SIGMA_X @ u)) / 2,
        d2=complex(np.trace(SIGMA_Y @ u)) / 2,
        d3=complex(np.trace(SIGMA_Z @ u)) / 2,
    )


def pauli_reconstruct(c: PauliCoeffs) -> NDArray[np.complex128]:
    """Inverse of :func:`pauli_decompose`."""
    return c.d0 * SIGMA_0 + c.d1 * SIGMA_X + c.d2 * SIGMA_Y + c.d3 * SIGMA_Z


def is_unitary(u: NDArray[np.complex128], tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    return bool(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) <= tol)


def assert_unitary(u: NDArray[np.complex128], tol: float = UNITARY_TOL) -> None:
    """Raise ValueError if U is not unitary within tol (caller bug)."""
    dev = np.linalg.norm(np.asarray(u).conj().T @ u - np.eye(2))
    if dev > tol:
        raise ValueError(f"matrix is not unitary: ||U^dag U - I|| = {dev:.3e}")
