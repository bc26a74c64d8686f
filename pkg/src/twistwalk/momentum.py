"""Bloch-space analysis: per-k unitaries, closed-form d0, spectra, gaps.

The one-period unitary at quasi-momentum k is the product of the walk's
substep matrices with the shift replaced by its diagonal Fourier form
S(k) = exp(+i k dx sigma_z).  Its half-trace d0 fully determines the
two effective bands through lambda = +/- arccos(d0) / (2 dt).

The closed forms d0_yy / d0_xi are independent transcriptions of the
trace; their agreement with unitary_at_k to 1e-12 is the module's
central correctness check.  Note the asymmetric d0_yy term carries the
signed factor sin(4 alpha), not |sin(4 alpha)|.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .lattice import SHIFT, WalkSpec, step_operations

__all__ = [
    "SpectrumSample",
    "SpectrumTable",
    "DoublingReport",
    "BZ_EDGE",
    "unitary_at_k",
    "d0_yy",
    "d0_xi",
    "effective_spectrum",
    "doubling_scan",
    "default_k_grid",
]

BZ_EDGE = np.pi / 2

SOFT_CLAMP = 1e-9
HARD_CLAMP = 1e-6


@dataclass(frozen=True)
class SpectrumSample:
    k: float
    d0: float
    lambda_plus: float
    lambda_minus: float


@dataclass
class SpectrumTable:
    variant: str
    epsilon: float
    params: dict
    samples: list[SpectrumSample]

    @property
    def k(self) -> NDArray[np.float64]:
        return np.array([s.k for s in self.samples])

    @property
    def lambda_plus(self) -> NDArray[np.float64]:
        return np.array([s.lambda_plus for s in self.samples])

    @property
    def lambda_minus(self) -> NDArray[np.float64]:
        return np.array([s.lambda_minus for s in self.samples])

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "d0", "lambda_plus", "lambda_minus"])
            for s in self.samples:
                w.writerow(
                    [repr(s.k), repr(s.d0), repr(s.lambda_plus), repr(s.lambda_minus)]
                )


def default_k_grid(n: int = 1001) -> NDArray[np.float64]:
    """Uniform endpoint-inclusive grid over the Brillouin zone.

    Odd n keeps k = 0 on the grid.
    """
    return np.linspace(-BZ_EDGE, BZ_EDGE, n)


def _shift_matrix(k: float, dx: float) -> NDArray[np.complex128]:
    phase = np.exp(1j * k * dx)
    return np.diag([phase, np.conj(phase)])


def unitary_at_k(spec: WalkSpec, k: float) -> NDArray[np.complex128]:
    """One-period Bloch unitary at physical quasi-momentum k."""
    s = _shift_matrix(k, spec.dx)
    u = np.eye(2, dtype=np.complex128)
    for op in step_operations(spec):
        u = (s if op is SHIFT else op) @ u
    return u


def d0_yy(alpha: float, theta: float, k: float):
    """Closed-form half-trace of the homogeneous Y-Y walk (m = 0).

    Five-term expression in A = cos(4 alpha), B = sin(theta); the
    k-antisymmetric last term vanishes iff sin(4 alpha) sin(theta) = 0.
    """
    a = np.cos(4 * alpha)
    b = np.sin(theta)
    ck = np.cos(k)
    sk = np.sin(k)
    return (
        (11 - a) / 16
        + np.cos(2 * k) * (1 + a) / 4
        + np.cos(4 * k) * (1 - 3 * a) / 16
        + sk**4 * ((1 + a) / 2) * (1 - 2 * b**2)
        + sk**3 * ck * 2 * b * np.sin(4 * alpha)
    )


def d0_xi(alpha: float, theta: float, k: float):
    """Closed-form half-trace of the alternate-twist walk (m = 0).

    A(A + sin th)/4 (cos 4k - 1) + (1 - cos th)/2 cos 2k
    + (1 + cos th)/2, with A = sin(2 alpha).  Symmetric in k for every
    parameter choice; at the zone edge it reduces to cos(theta).
    """
    a = np.sin(2 * alpha)
    return (
        a * (a + np.sin(theta)) / 4 * (np.cos(4 * k) - 1)
        + (1 - np.cos(theta)) / 2 * np.cos(2 * k)
        + (1 + np.cos(theta)) / 2
    )


def _clamped_arccos(d0: NDArray[np.float64]) -> NDArray[np.float64]:
    over = np.max(np.abs(d0)) - 1.0
    if over > HARD_CLAMP:
        raise ValueError(
            f"|d0| exceeds 1 by {over:.3e}: Bloch assembly bug, not rounding"
        )
    return np.arccos(np.clip(d0, -1.0, 1.0))


def effective_spectrum(
    spec: WalkSpec, k_grid: NDArray[np.float64] | None = None
) -> SpectrumTable:
    """Two-band effective spectrum over the Brillouin zone.

    k_grid is in lattice units (radians per site, zone [-pi/2, pi/2]);
    the physical quasi-momentum is k / dx.  Massless YY/XI use the
    closed-form d0; otherwise d0 comes from the trace of unitary_at_k.
    Bands are +/- arccos(d0) / (2 dt), the two-substep normalization
    under which the continuum limits of both variants land on their
    stated dispersion relations.
    """
    if k_grid is None:
        k_grid = default_k_grid()
    k_grid = np.asarray(k_grid, dtype=float)

    if spec.mass == 0.0 and spec.variant == "YY":
        d0 = d0_yy(spec.alpha, spec.twist, k_grid)
    elif spec.mass == 0.0 and spec.variant == "XI":
        d0 = d0_xi(spec.alpha, spec.twist, k_grid)
    else:
        d0 = np.array(
            [np.trace(unitary_at_k(spec, k / spec.dx)).real / 2 for k in k_grid]
        )

    lam = _clamped_arccos(d0) / (2 * spec.dt)
    params = {
        "alpha1": spec.alpha1,
        "theta": spec.theta,
        "theta1": spec.theta1,
        "mass": spec.mass,
    }
    samples = [
        SpectrumSample(float(k), float(d), float(lp), float(-lp))
        for k, d, lp in zip(k_grid, d0, lam)
    ]
    return SpectrumTable(spec.variant, spec.epsilon, params, samples)


@dataclass
class DoublingReport:
    """Band-crossing locations and the zone-edge gap."""

    zeros: list[float]
    edge_gap: float
    edge_gap_claimed: float | None

    @property
    def n_zeros(self) -> int:
        return len(self.zeros)


def doubling_scan(
    table: SpectrumTable,
    zero_tol: float = 1e-6,
    claimed_gap: float | None = None,
) -> DoublingReport:
    """Locate spectral zeros and measure the Brillouin-zone edge gap.

    Contiguous grid runs with |lambda| < zero_tol collapse to one zero
    at the run's minimum.  edge_gap is the raw arccos-based value
    lambda_plus - lambda_minus at the zone edge; claimed_gap carries an
    alternative normalization (e.g. 2*theta1 for the alternate twist)
    for side-by-side reporting without endorsing either convention.
    """
    k = table.k
    lam = table.lambda_plus
    if not (np.isclose(k[0], -BZ_EDGE) and np.isclose(k[-1], BZ_EDGE)):
        raise ValueError("spectrum table must cover the Brillouin-zone endpoints")

    zeros: list[float] = []
    below = np.abs(lam) < zero_tol
    i = 0
    while i < len(k):
        if below[i]:
            j = i
            while j + 1 < len(k) and below[j + 1]:
                j += 1
            run = slice(i, j + 1)
            zeros.append(float(k[run][np.argmin(np.abs(lam[run]))]))
            i = j + 1
        else:
            i += 1

    edge_gap = float(lam[-1] - table.lambda_minus[-1])
    return DoublingReport(zeros, edge_gap, claimed_gap)
