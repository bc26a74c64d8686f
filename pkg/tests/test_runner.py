import json

import numpy as np
import pytest

from twistwalk.cli import main
from twistwalk.runner import ConfigError, parse_config, run, validate


def base_config(**over):
    cfg = {
        "experiment": "simulate",
        "walk": {"variant": "YY", "epsilon": 0.04, "alpha1": 1.0, "theta": 0.4},
        "initial": {"mu_x": 0.0, "sigma2": 0.5, "bloch": {"theta": np.pi / 2, "phi": np.pi / 2}},
        "n_steps": 10,
    }
    cfg.update(over)
    return cfg


def test_validate_ok():
    assert validate(base_config()) == []


def test_validate_schema_errors():
    diags = validate(base_config(walk={"variant": "ZZ"}))
    assert any("variant" in d and d.startswith("error:") for d in diags)
    diags = validate({"experiment": "simulate"})
    assert any("walk" in d for d in diags)
    diags = validate(base_config(bogus=1))
    assert diags


def test_validate_field_diagnostics():
    cfg = base_config()
    cfg["initial"]["sigma2"] = -1
    assert any("sigma2" in d for d in validate(cfg))

    cfg = base_config(walk={"variant": "YY", "theta1": 0.3})
    assert any("theta1" in d for d in validate(cfg))

    cfg = base_config(walk={"variant": "XI", "scale_twist": False, "theta1": 0.3})
    diags = validate(cfg)
    assert any(d.startswith("warning:") for d in diags)
    assert not any(d.startswith("error:") for d in diags)


def test_validate_converge_steps():
    cfg = base_config(experiment="converge", eps_list=[0.03], t_final=1.0)
    assert any("integer" in d for d in validate(cfg))


def test_parse_config_spinor_forms():
    cfg = base_config()
    cfg["initial"] = {"sigma2": 0.5, "spinor": [[1, 0], [0, 1]]}
    parsed = parse_config(cfg)
    assert np.allclose(parsed.spinor, np.array([1, 1j]) / np.sqrt(2))
    cfg["initial"] = {"spinor": [[0, 0], [0, 0]]}
    with pytest.raises(ConfigError):
        parse_config(cfg)


def test_run_simulate_deterministic(tmp_path):
    cfg = base_config()
    m1 = run(cfg, tmp_path / "a")
    m2 = run(cfg, tmp_path / "b")
    assert m1.config_sha256 == m2.config_sha256
    out1 = (tmp_path / "a" / "observables.csv").read_bytes()
    out2 = (tmp_path / "b" / "observables.csv").read_bytes()
    assert out1 == out2
    manifest = json.loads((tmp_path / "a" / "manifest.json").read_text())
    assert manifest["outputs"] == ["observables.csv"]
    assert manifest["experiment"] == "simulate"


def test_run_zero_steps(tmp_path):
    cfg = base_config(n_steps=0)
    run(cfg, tmp_path)
    lines = (tmp_path / "observables.csv").read_text().splitlines()
    assert len(lines) == 2        # header + initial state only
    assert lines[1].startswith("0.0,")


def test_cli_exit_codes(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(base_config()))
    assert main(["simulate", "--config", str(good), "--out", str(tmp_path / "o")]) == 0

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(base_config(walk={"variant": "ZZ"})))
    assert main(["validate", "--config", str(bad)]) == 2
    assert main(["simulate", "--config", str(bad), "--out", str(tmp_path)]) == 2

    missing = tmp_path / "nope.json"
    assert main(["simulate", "--config", str(missing), "--out", str(tmp_path)]) == 2


def test_cli_subcommand_mismatch(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(base_config(experiment="spectrum")))
    assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path)]) == 2


def test_cli_strict_wrap_escalation(tmp_path):
    cfg = base_config(n_steps=50, n_sites=32)
    path = tmp_path / "wrap.json"
    path.write_text(json.dumps(cfg))
    out = str(tmp_path / "o")
    assert main(["simulate", "--config", str(path), "--out", out]) == 0
    assert main(["simulate", "--config", str(path), "--out", out, "--strict"]) == 3


def test_run_spectrum_and_constraints(tmp_path):
    run(base_config(experiment="spectrum", k_points=101), tmp_path / "s")
    doubling = json.loads((tmp_path / "s" / "doubling.json").read_text())
    assert "edge_gap" in doubling

    run(base_config(experiment="constraints"), tmp_path / "c")
    rep = json.loads((tmp_path / "c" / "constraints.json").read_text())
    assert rep["satisfied"] is True


def test_run_entropy_scan_seeded(tmp_path):
    cfg = base_config(
        experiment="entropy-scan", n_steps=12, n_samples=3, seed=5, stride=1
    )
    run(cfg, tmp_path / "a", threads=1)
    run(cfg, tmp_path / "b", threads=2)
    a = (tmp_path / "a" / "entropy_scan.csv").read_text()
    b = (tmp_path / "b" / "entropy_scan.csv").read_text()
    assert a == b
    assert a.splitlines()[0] == "theta_bloch,phi_bloch,s_infinity,tau_5pct,n_extrema"
