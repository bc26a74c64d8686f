"""twistwalk: twisted discrete-time quantum walks and their continuum limits.

Exact lattice evolution of the homogeneous (YY) and alternate (XI)
twisted walks, closed-form effective spectra, numerical verification of
the continuum-limit existence constraints, wavepacket observables with
their analytic comparators, and an experiment runner.
"""

__version__ = "0.1.0"

from .algebra import (
    SIGMA_0,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    CoinParams,
    PauliCoeffs,
    coin,
    pauli_decompose,
    pauli_reconstruct,
    rotation,
)
from .continuum import (
    ContinuumModel,
    GeneralCoinFamily,
    check_constraints,
    continuum_spectrum,
    convergence_study,
    evolve_continuum,
    numeric_limit_check,
    xi_family,
    yy_family,
)
from .lattice import (
    LatticeWrapWarning,
    SpinorField,
    WalkSpec,
    evolve,
    gaussian_init,
    plane_wave,
    recommended_n_sites,
    step,
    trajectory,
)
from .momentum import (
    BZ_EDGE,
    SpectrumTable,
    d0_xi,
    d0_yy,
    default_k_grid,
    doubling_scan,
    effective_spectrum,
    unitary_at_k,
)
from .observables import (
    ObservableSeries,
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

__all__ = [
    "__version__",
    "SIGMA_0",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "CoinParams",
    "PauliCoeffs",
    "coin",
    "pauli_decompose",
    "pauli_reconstruct",
    "rotation",
    "ContinuumModel",
    "GeneralCoinFamily",
    "check_constraints",
    "continuum_spectrum",
    "convergence_study",
    "evolve_continuum",
    "numeric_limit_check",
    "xi_family",
    "yy_family",
    "LatticeWrapWarning",
    "SpinorField",
    "WalkSpec",
    "evolve",
    "gaussian_init",
    "plane_wave",
    "recommended_n_sites",
    "step",
    "trajectory",
    "BZ_EDGE",
    "SpectrumTable",
    "d0_xi",
    "d0_yy",
    "default_k_grid",
    "doubling_scan",
    "effective_spectrum",
    "unitary_at_k",
    "ObservableSeries",
    "bloch_spinor",
    "continuum_entropy_xi",
    "continuum_entropy_yy",
    "convergence_diagnostics",
    "density",
    "entanglement_entropy",
    "moments",
    "record_observables",
    "theory_m1_yy",
    "theory_variance_yy",
]
