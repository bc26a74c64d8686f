"""Measurement layer: densities, moments, entanglement entropy.

Includes the closed-form comparators for the homogeneous-twist walk
(drift m1 and variance growth), the continuum closed forms for the
coin reduced-density-matrix eigenvalues of both variants, and the
transient-regime diagnostics tau_5% / extrema count / S_infinity.

Entropy is always the base-2 von Neumann entropy of the 2x2 coin
reduced density matrix, so it lands in [0, 1] bits.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .lattice import SpinorField, WalkSpec, trajectory

__all__ = [
    "DensityProfile",
    "ObservableSeries",
    "Diagnostics",
    "bloch_spinor",
    "density",
    "moments",
    "theory_m1_yy",
    "theory_variance_yy",
    "entanglement_entropy",
    "continuum_entropy_yy",
    "continuum_entropy_xi",
    "convergence_diagnostics",
    "record_observables",
]

EIG_TOL = 1e-10
EXTREMA_HYSTERESIS = 1e-3


@dataclass
class DensityProfile:
    positions: NDArray[np.float64]
    rho: NDArray[np.float64]          # per-site probabilities, sum 1


def bloch_spinor(theta_b: float, phi_b: float) -> NDArray[np.complex128]:
    """Unit spinor (cos th/2, e^{i ph} sin th/2) from Bloch angles."""
    return np.array(
        [np.cos(theta_b / 2), np.exp(1j * phi_b) * np.sin(theta_b / 2)],
        dtype=np.complex128,
    )


def density(state: SpinorField) -> DensityProfile:
    rho = np.sum(np.abs(state.amplitudes) ** 2, axis=0)
    return DensityProfile(state.positions, rho)


def moments(profile: DensityProfile) -> tuple[float, float, float]:
    """(m1, m2, V) of the position distribution in physical units."""
    m1 = float(np.sum(profile.positions * profile.rho))
    m2 = float(np.sum(profile.positions**2 * profile.rho))
    return m1, m2, m2 - m1 * m1


def _normalized(spinor) -> NDArray[np.complex128]:
    sp = np.asarray(spinor, dtype=np.complex128)
    return sp / np.linalg.norm(sp)


def _im_cross(spinor) -> float:
    sp = _normalized(spinor)
    return float(np.imag(sp[0] * np.conj(sp[1])))


def theory_m1_yy(t, mu_x: float, alpha1: float, spinor):
    """Closed-form drift m1(t) = mu + 4 t alpha1 Im[psi+ conj(psi-)].

    The imaginary cross term is extremal (+-1/2) on the sigma_y
    eigenspinors (1, +-i)/sqrt(2), which therefore drift fastest.
    """
    return mu_x + 4 * np.asarray(t) * alpha1 * _im_cross(spinor)


def theory_variance_yy(t, sigma2: float, alpha1: float, theta: float, spinor):
    """Closed-form variance growth of the homogeneous-twist walk.

    V(t) = sigma^2 + (sin^2 theta / sigma^2) t^2
         + 4 alpha1^2 (1 - 4 Im[psi+ conj(psi-)]^2) t^2.
    The dispersive term scales inversely with the initial width: the
    narrower the packet, the faster the twist spreads it.
    """
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    im = _im_cross(spinor)
    t2 = np.square(np.asarray(t, dtype=float))
    return sigma2 + (np.sin(theta) ** 2 / sigma2) * t2 + 4 * alpha1**2 * (
        1 - 4 * im**2
    ) * t2


def _entropy_bits(eigs: NDArray[np.float64]) -> float:
    if np.min(eigs) < -EIG_TOL or np.max(eigs) > 1 + EIG_TOL:
        raise ValueError(f"density-matrix eigenvalues out of range: {eigs}")
    p = np.clip(eigs, 0.0, 1.0)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz))) + 0.0   # avoid -0.0


def entanglement_entropy(state: SpinorField) -> float:
    """Coin-position entanglement in bits.

    Traces out position to get the 2x2 coin reduced density matrix
    rho_cc' = sum_l psi^c_l conj(psi^c'_l) and returns the base-2
    entropy of its eigenvalues.
    """
    a = state.amplitudes
    rho = a @ a.conj().T
    return _entropy_bits(np.linalg.eigvalsh(rho))


def continuum_entropy_yy(t, alpha1: float, theta: float, spinor) -> float:
    """Continuum-limit entropy of the homogeneous-twist walk.

    Reduced-matrix eigenvalues
    lambda+- = 1/2 [1 +- sqrt(1 + 4 |psi+|^2 |psi-|^2 (E/sqrt(D) - 1))]
    with D = 1 + t^2 sin^2 theta and E = exp(-4 alpha1^2 t^2 / D).
    The derivation carries an implicit unit initial width; no sigma
    appears even though the variance comparator has one.
    """
    sp = _normalized(spinor)
    pq = float(np.abs(sp[0]) ** 2 * np.abs(sp[1]) ** 2)
    d = 1 + t**2 * np.sin(theta) ** 2
    e = np.exp(-4 * alpha1**2 * t**2 / d)
    inner = 1 + 4 * pq * (e / np.sqrt(d) - 1)
    if inner < -1e-12:
        raise ValueError("negative discriminant: formula misuse")
    root = np.sqrt(max(inner, 0.0))
    return _entropy_bits(np.array([(1 + root) / 2, (1 - root) / 2]))


def continuum_entropy_xi(t, beta: float, sigma: float, spinor) -> float:
    """Continuum-limit entropy of the alternate-twist walk.

    lambda+- = 1/2 [1 +- sqrt(4 Im^2 + e^{-t^2 beta^2 / sigma^2}
               (1 + 4|psi+|^4 - 4|psi+|^2 + 4 Re^2))]
    where Im/Re are the parts of psi+ conj(psi-).  The factor 4 on the
    Im^2 term is what makes the t = 0 state exactly pure and keeps the
    sigma_y eigenspinors unentangled for every t when beta != 0.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    sp = _normalized(spinor)
    cross = sp[0] * np.conj(sp[1])
    p = float(np.abs(sp[0]) ** 2)
    inner = 4 * np.imag(cross) ** 2 + np.exp(-(t**2) * beta**2 / sigma**2) * (
        1 + 4 * p**2 - 4 * p + 4 * np.real(cross) ** 2
    )
    if inner < -1e-12:
        raise ValueError("negative discriminant: formula misuse")
    root = np.sqrt(max(float(inner), 0.0))
    return _entropy_bits(np.array([(1 + root) / 2, (1 - root) / 2]))


@dataclass
class ObservableSeries:
    """Per-time observables of one run; theory columns are NaN when the
    variant has no closed-form comparator."""

    times: NDArray[np.float64]
    m1: NDArray[np.float64]
    m1_theory: NDArray[np.float64]
    variance: NDArray[np.float64]
    variance_theory: NDArray[np.float64]
    entropy: NDArray[np.float64]

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "m1", "m1_theory", "V", "V_theory", "S"])
            for row in zip(
                self.times, self.m1, self.m1_theory,
                self.variance, self.variance_theory, self.entropy,
            ):
                w.writerow([repr(float(v)) for v in row])


def record_observables(
    state: SpinorField,
    spec: WalkSpec,
    n_steps: int,
    mu_x: float = 0.0,
    sigma2: float | None = None,
    spinor=None,
    stride: int = 1,
) -> ObservableSeries:
    """Evolve and stream (t, m1, V, S) with theory columns when available.

    Theory comparators need the initial-packet parameters; pass sigma2
    and spinor for the YY closed forms, otherwise the theory columns
    are NaN.
    """
    has_theory = spec.variant == "YY" and sigma2 is not None and spinor is not None
    rows = []
    for t, st in trajectory(state, spec, n_steps, stride=stride):
        m1, _, v = moments(density(st))
        s = entanglement_entropy(st)
        m1_th = theory_m1_yy(t, mu_x, spec.alpha1, spinor) if has_theory else np.nan
        v_th = (
            theory_variance_yy(t, sigma2, spec.alpha1, spec.theta, spinor)
            if has_theory
            else np.nan
        )
        rows.append((t, m1, m1_th, v, v_th, s))
    arr = np.array(rows, dtype=float).T
    return ObservableSeries(*arr)


@dataclass(frozen=True)
class Diagnostics:
    tau_5pct: float
    n_extrema: int
    s_infinity: float


def _count_extrema(values: NDArray[np.float64], hysteresis: float) -> int:
    """Direction reversals larger than the hysteresis band."""
    count = 0
    direction = 0
    ref = values[0]
    for v in values[1:]:
        if direction >= 0 and v < ref - hysteresis:
            count += direction == 1
            direction, ref = -1, v
        elif direction <= 0 and v > ref + hysteresis:
            count += direction == -1
            direction, ref = 1, v
        elif direction >= 0:
            ref = max(ref, v)
        else:
            ref = min(ref, v)
    return count


def convergence_diagnostics(
    times,
    entropy,
    band: float = 0.05,
    hysteresis: float = EXTREMA_HYSTERESIS,
) -> Diagnostics:
    """Transient-regime summary of an entropy time series.

    S_infinity is the mean of the final 10% of samples; tau_5% the
    earliest time after which the series stays within `band` of it;
    extrema are counted with a hysteresis noise floor.  Returns NaN for
    tau_5% if the series never settles.
    """
    times = np.asarray(times, dtype=float)
    entropy = np.asarray(entropy, dtype=float)
    if len(entropy) < 10:
        raise ValueError("series too short: need at least 10 samples")

    tail = max(1, len(entropy) // 10)
    s_inf = float(np.mean(entropy[-tail:]))

    within = np.abs(entropy - s_inf) < band
    tau = np.nan
    # earliest index from which every later sample stays in band
    ok = np.logical_and.accumulate(within[::-1])[::-1]
    idx = np.nonzero(ok)[0]
    if idx.size:
        tau = float(times[idx[0]])

    return Diagnostics(tau, _count_extrema(entropy, hysteresis), s_inf)
