"""Experiment orchestration: JSON configs in, CSV/JSON artifacts out.

A config is a single self-describing JSON document validated against
CONFIG_SCHEMA.  ``run`` dispatches on the experiment kind and writes the
tabular results plus a RunManifest; numeric CSV cells are written with
repr so identical config + version gives bit-identical outputs.
"""

from __future__ import annotations

import csv
import hashlib
import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .continuum import (
    ContinuumModel,
    GeneralCoinFamily,
    check_constraints,
    convergence_study,
    xi_family,
    yy_family,
)
from .lattice import (
    LatticeWrapWarning,
    WalkSpec,
    gaussian_init,
    recommended_n_sites,
)
from .momentum import default_k_grid, doubling_scan, effective_spectrum
from .observables import (
    bloch_spinor,
    convergence_diagnostics,
    record_observables,
)

__all__ = [
    "CONFIG_SCHEMA",
    "ExperimentConfig",
    "RunManifest",
    "ConfigError",
    "PhysicsError",
    "load_config",
    "validate",
    "run",
]

EXPERIMENTS = ("simulate", "spectrum", "constraints", "converge", "entropy-scan")

_NUMBER = {"type": "number"}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["experiment", "walk"],
    "additionalProperties": False,
    "properties": {
        "experiment": {"enum": list(EXPERIMENTS)},
        "walk": {
            "type": "object",
            "required": ["variant"],
            "additionalProperties": False,
            "properties": {
                "variant": {"enum": ["YY", "XI"]},
                "epsilon": {"type": "number", "exclusiveMinimum": 0},
                "alpha1": _NUMBER,
                "theta": _NUMBER,
                "theta1": _NUMBER,
                "mass": _NUMBER,
                "scale_twist": {"type": "boolean"},
            },
        },
        "initial": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "mu_x": _NUMBER,
                "sigma2": {"type": "number", "exclusiveMinimum": 0},
                "bloch": {
                    "type": "object",
                    "required": ["theta", "phi"],
                    "additionalProperties": False,
                    "properties": {"theta": _NUMBER, "phi": _NUMBER},
                },
                "spinor": {
                    "type": "array",
                    "minItems": 2,
                    "maxItems": 2,
                    "items": {
                        "type": "array",
                        "minItems": 2,
                        "maxItems": 2,
                        "items": _NUMBER,
                    },
                },
            },
        },
        "n_steps": {"type": "integer", "minimum": 0},
        "n_sites": {"type": "integer", "minimum": 2},
        "stride": {"type": "integer", "minimum": 1},
        "k_points": {"type": "integer", "minimum": 3},
        "eps_list": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "number", "exclusiveMinimum": 0},
        },
        "t_final": {"type": "number", "exclusiveMinimum": 0},
        "n_samples": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
    },
}


class ConfigError(ValueError):
    """The config cannot pass validation (CLI exit code 2)."""


class PhysicsError(RuntimeError):
    """A physics precondition failed at run time (CLI exit code 3)."""


@dataclass
class ExperimentConfig:
    """Parsed and defaulted experiment description."""

    experiment: str
    walk: WalkSpec
    mu_x: float = 0.0
    sigma2: float = 1.0
    spinor: np.ndarray = field(
        default_factory=lambda: np.array([1.0, 1.0j]) / np.sqrt(2)
    )
    n_steps: int = 100
    n_sites: int | None = None
    stride: int = 1
    k_points: int = 1001
    eps_list: tuple[float, ...] = (0.04, 0.01, 0.0025)
    t_final: float = 1.0
    n_samples: int = 64
    seed: int = 0
    raw: dict = field(default_factory=dict)


@dataclass
class RunManifest:
    """Provenance record written next to every run's outputs."""

    experiment: str
    config_sha256: str
    version: str
    timestamp: str
    outputs: list[str]

    def write(self, path: Path) -> None:
        path.write_text(json.dumps(asdict(self), indent=2) + "\n")


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def validate(raw: dict) -> list[str]:
    """Diagnostics for a raw config dict.

    Entries are prefixed "error:" or "warning:"; a run starts iff no
    error-level entry is present.
    """
    diags: list[str] = []
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    for err in sorted(validator.iter_errors(raw), key=str):
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        diags.append(f"error: {where}: {err.message}")
    if diags:
        return diags

    walk = raw.get("walk", {})
    if walk.get("variant") == "XI" and walk.get("scale_twist") is False:
        diags.append(
            "warning: walk/scale_twist: the alternate-twist continuum limit "
            "requires the sqrt(eps)-scaled twist angle; unscaled runs have "
            "no continuum comparator"
        )
    if walk.get("variant") == "YY" and walk.get("theta1"):
        diags.append("error: walk/theta1: theta1 applies only to the XI variant")
    if walk.get("variant") == "XI" and walk.get("theta"):
        diags.append("error: walk/theta: the XI twist is set via theta1")

    initial = raw.get("initial", {})
    if "bloch" in initial and "spinor" in initial:
        diags.append("error: initial: give either bloch angles or a spinor, not both")
    if "spinor" in initial:
        sp = np.array(
            [complex(re, im) for re, im in initial["spinor"]], dtype=complex
        )
        if not np.any(sp):
            diags.append("error: initial/spinor: must be a nonzero 2-vector")

    if raw.get("experiment") == "converge":
        t_final = raw.get("t_final", 1.0)
        for eps in raw.get("eps_list", (0.04, 0.01, 0.0025)):
            if abs(t_final / eps - round(t_final / eps)) > 1e-9:
                diags.append(
                    f"error: eps_list: t_final/epsilon = {t_final}/{eps} "
                    "is not an integer step count"
                )
    return diags


def parse_config(raw: dict) -> ExperimentConfig:
    diags = [d for d in validate(raw) if d.startswith("error:")]
    if diags:
        raise ConfigError("; ".join(diags))

    w = raw["walk"]
    spec = WalkSpec(
        variant=w["variant"],
        epsilon=w.get("epsilon", 1.0),
        alpha1=w.get("alpha1", 0.0),
        theta=w.get("theta", 0.0),
        theta1=w.get("theta1", 0.0),
        mass=w.get("mass", 0.0),
        scale_twist=w.get("scale_twist", True),
    )

    initial = raw.get("initial", {})
    if "spinor" in initial:
        spinor = np.array([complex(re, im) for re, im in initial["spinor"]])
        spinor = spinor / np.linalg.norm(spinor)
    elif "bloch" in initial:
        spinor = bloch_spinor(initial["bloch"]["theta"], initial["bloch"]["phi"])
    else:
        spinor = np.array([1.0, 1.0j]) / np.sqrt(2)

    cfg = ExperimentConfig(
        experiment=raw["experiment"],
        walk=spec,
        mu_x=initial.get("mu_x", 0.0),
        sigma2=initial.get("sigma2", 1.0),
        spinor=spinor,
        raw=raw,
    )
    for name in (
        "n_steps", "n_sites", "stride", "k_points", "t_final", "n_samples", "seed",
    ):
        if name in raw:
            setattr(cfg, name, raw[name])
    if "eps_list" in raw:
        cfg.eps_list = tuple(raw["eps_list"])
    return cfg


def _config_hash(raw: dict) -> str:
    canon = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) for v in row])


def _run_simulate(cfg: ExperimentConfig, out: Path, strict: bool) -> list[Path]:
    spec = cfg.walk
    n = cfg.n_sites or recommended_n_sites(spec, cfg.n_steps, cfg.sigma2)
    state = gaussian_init(n, spec.dx, cfg.mu_x, cfg.sigma2, cfg.spinor)
    with warnings.catch_warnings():
        warnings.simplefilter("error" if strict else "default", LatticeWrapWarning)
        series = record_observables(
            state, spec, cfg.n_steps,
            mu_x=cfg.mu_x, sigma2=cfg.sigma2, spinor=cfg.spinor,
            stride=cfg.stride,
        )
    path = out / "observables.csv"
    series.write_csv(path)
    return [path]


def _run_spectrum(cfg: ExperimentConfig, out: Path, strict: bool) -> list[Path]:
    table = effective_spectrum(cfg.walk, default_k_grid(cfg.k_points))
    report = doubling_scan(table)
    csv_path = out / "spectrum.csv"
    table.write_csv(csv_path)
    json_path = out / "doubling.json"
    json_path.write_text(
        json.dumps(
            {"zeros": report.zeros, "edge_gap": report.edge_gap}, indent=2
        )
        + "\n"
    )
    return [csv_path, json_path]


def _run_constraints(cfg: ExperimentConfig, out: Path, strict: bool) -> list[Path]:
    spec = cfg.walk
    family: GeneralCoinFamily
    if spec.variant == "YY":
        family = yy_family(spec.alpha1, spec.theta)
    else:
        family = xi_family(spec.alpha1)
    report = check_constraints(family)
    path = out / "constraints.json"
    path.write_text(
        json.dumps(
            {
                "satisfied": bool(report.satisfied),
                "branch": report.branch,
                "max_residual": report.max_residual,
                "residuals": report.residuals,
                "c1": report.c1,
                "c2": report.c2,
            },
            indent=2,
        )
        + "\n"
    )
    return [path]


def _run_converge(cfg: ExperimentConfig, out: Path, strict: bool) -> list[Path]:
    rows = convergence_study(
        cfg.walk, cfg.eps_list, cfg.t_final, cfg.sigma2, cfg.spinor, cfg.mu_x
    )
    path = out / "converge.csv"
    _write_csv(
        path,
        ["epsilon", "n_sites", "n_steps", "l2_error"],
        [(r.epsilon, r.n_sites, r.n_steps, r.l2_error) for r in rows],
    )
    return [path]


def _run_entropy_scan(
    cfg: ExperimentConfig, out: Path, strict: bool, threads: int
) -> list[Path]:
    """Sample initial spinors on the Bloch sphere and summarize each
    run's entropy transient."""
    rng = np.random.default_rng(cfg.seed)
    angles = [
        (float(np.arccos(1 - 2 * rng.random())), float(2 * np.pi * rng.random()))
        for _ in range(cfg.n_samples)
    ]
    spec = cfg.walk
    n = cfg.n_sites or recommended_n_sites(spec, cfg.n_steps, cfg.sigma2)

    def one(pair):
        th_b, ph_b = pair
        state = gaussian_init(n, spec.dx, cfg.mu_x, cfg.sigma2, bloch_spinor(th_b, ph_b))
        series = record_observables(state, spec, cfg.n_steps, stride=cfg.stride)
        d = convergence_diagnostics(series.times, series.entropy)
        return (th_b, ph_b, d.s_infinity, d.tau_5pct, d.n_extrema)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(one, angles))
    else:
        rows = [one(p) for p in angles]

    path = out / "entropy_scan.csv"
    _write_csv(
        path, ["theta_bloch", "phi_bloch", "s_infinity", "tau_5pct", "n_extrema"], rows
    )
    return [path]


def run(raw: dict, out_dir, strict: bool = False, threads: int = 1) -> RunManifest:
    """Validate, dispatch and serialize one experiment.

    Raises ConfigError for schema/field problems and PhysicsError when a
    module precondition fails mid-run (including wrap warnings under
    strict mode).
    """
    cfg = parse_config(raw)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    runners = {
        "simulate": lambda: _run_simulate(cfg, out, strict),
        "spectrum": lambda: _run_spectrum(cfg, out, strict),
        "constraints": lambda: _run_constraints(cfg, out, strict),
        "converge": lambda: _run_converge(cfg, out, strict),
        "entropy-scan": lambda: _run_entropy_scan(cfg, out, strict, threads),
    }
    try:
        outputs = runners[cfg.experiment]()
    except (ValueError, LatticeWrapWarning) as exc:
        raise PhysicsError(str(exc)) from exc

    manifest = RunManifest(
        experiment=cfg.experiment,
        config_sha256=_config_hash(raw),
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        outputs=[p.name for p in outputs],
    )
    manifest.write(out / "manifest.json")
    return manifest
