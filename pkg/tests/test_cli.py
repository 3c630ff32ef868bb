"""Scenario CLI: config validation, artifact writing, determinism, sweeps."""
import json
import os

import numpy as np
import pytest
import yaml

from poismech.cli import load_config, main, validate_config
from poismech.errors import ConfigError

SU2_CFG = {
    "model": "su2",
    "params": {"epsilon": 0.2, "t_end": 0.2, "step": 1e-2, "tol": 1e-8},
    "outputs": ["trajectory"],
    "seed": 3,
}

MINK_CFG = {
    "model": "minkowski2d",
    "params": {"epsilon": 0.2, "n_samples": 21},
    "outputs": ["trajectory", "scattering", "projection"],
    "seed": 0,
}


def write_cfg(tmp_path, cfg, name="scenario.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(cfg))
    return path


def collect_files(out_dir):
    return sorted(str(p.relative_to(out_dir)) for p in out_dir.rglob("*") if p.is_file())


# --- validation ------------------------------------------------------------

def test_unknown_model_rejected():
    with pytest.raises(ConfigError, match="model"):
        validate_config({"model": "heisenberg", "params": {"epsilon": 0.1}})


def test_missing_required_parameter_names_field():
    with pytest.raises(ConfigError, match=r"params\.epsilon"):
        validate_config({"model": "su2", "params": {}})


def test_unknown_parameter_names_field():
    with pytest.raises(ConfigError, match=r"params\.alpha"):
        validate_config({"model": "su2", "params": {"epsilon": 0.2, "alpha": 1.0}})


def test_wrong_parameter_type_names_field():
    with pytest.raises(ConfigError, match=r"params\.n_samples"):
        validate_config({"model": "minkowski2d",
                         "params": {"epsilon": 0.2, "n_samples": 2.5}})
    with pytest.raises(ConfigError, match=r"params\.mass"):
        validate_config({"model": "minkowski2d",
                         "params": {"epsilon": 0.2, "mass": "heavy"}})


def test_unknown_output_and_duplicates_rejected():
    with pytest.raises(ConfigError, match=r"outputs\[1\]"):
        validate_config({"model": "su2", "params": {"epsilon": 0.2},
                         "outputs": ["trajectory", "profile"]})
    with pytest.raises(ConfigError, match=r"outputs\[1\]"):
        validate_config({"model": "su2", "params": {"epsilon": 0.2},
                         "outputs": ["trajectory", "trajectory"]})


def test_unknown_top_level_key_rejected():
    with pytest.raises(ConfigError, match="grid"):
        validate_config({"model": "su2", "params": {"epsilon": 0.2}, "grid": 4})


def test_invalid_yaml_exits_with_usage_error(tmp_path, capsys):
    bad = tmp_path / "broken.yaml"
    bad.write_text("model: [unclosed\n")
    assert main(["run", str(bad), "--out", str(tmp_path / "out")]) == 2
    assert "config error" in capsys.readouterr().out


def test_config_error_exit_code(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"model": "su2", "params": {"epsilon": "x"}})
    assert main(["run", str(cfg), "--out", str(tmp_path / "out")]) == 2
    out = capsys.readouterr().out
    assert "params.epsilon" in out


# --- run -------------------------------------------------------------------

def test_run_writes_manifest_covering_every_file(tmp_path):
    cfg = write_cfg(tmp_path, SU2_CFG)
    out = tmp_path / "out"
    assert main(["run", str(cfg), "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    on_disk = collect_files(out)
    assert manifest["files"] == on_disk
    assert "trajectory" in manifest["artifacts"]
    assert manifest["certificates_passed"] is True
    summary = manifest["artifacts"]["trajectory"]["summary"]
    assert summary["det_residual"] < 1e-8


def test_run_is_byte_deterministic(tmp_path):
    cfg = write_cfg(tmp_path, MINK_CFG)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["run", str(cfg), "--out", str(out_a)]) == 0
    assert main(["run", str(cfg), "--out", str(out_b)]) == 0
    files_a, files_b = collect_files(out_a), collect_files(out_b)
    assert files_a == files_b and files_a
    for rel in files_a:  # manifest.json included: it records no paths
        assert (out_a / rel).read_bytes() == (out_b / rel).read_bytes(), rel


def test_csv_artifacts_keep_full_precision(tmp_path):
    cfg = write_cfg(tmp_path, SU2_CFG)
    out = tmp_path / "out"
    main(["run", str(cfg), "--out", str(out)])
    lines = (out / "trajectory.csv").read_text().splitlines()
    header = lines[0].split(",")
    assert header[0] == "t" and "a_re" in header
    row = lines[1].split(",")
    assert len(row) == len(header)
    # 17 significant digits survive a float round-trip exactly
    val = float(row[header.index("a_re")])
    assert format(val, ".17g") == row[header.index("a_re")]


def test_json_format(tmp_path):
    cfg = dict(SU2_CFG)
    cfg_path = write_cfg(tmp_path, cfg)
    out = tmp_path / "out"
    assert main(["run", str(cfg_path), "--out", str(out), "--format", "json"]) == 0
    data = json.loads((out / "trajectory.json").read_text())
    assert set(data) == {"columns", "rows", "summary"}
    assert len(data["rows"][0]) == len(data["columns"])


def test_empty_outputs_allowed(tmp_path):
    cfg = write_cfg(tmp_path, {"model": "su2", "params": {"epsilon": 0.2},
                               "outputs": []})
    out = tmp_path / "out"
    assert main(["run", str(cfg), "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["artifacts"] == {}
    assert collect_files(out) == ["manifest.json"]


# --- sweep -----------------------------------------------------------------

def test_sweep_over_epsilon_includes_flat_baseline(tmp_path):
    cfg = write_cfg(tmp_path, {"model": "minkowski2d",
                               "params": {"epsilon": 0.2}, "outputs": []})
    out = tmp_path / "sweep"
    rc = main(["sweep", str(cfg), "--param", "epsilon",
               "--values", "0,0.01,0.02", "--out", str(out)])
    assert rc == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert len(lines) == 4
    header = lines[0].split(",")
    i_eps = header.index("epsilon")
    i_dev = header.index("classical_limit_dev")
    i_status = header.index("status")
    rows = [ln.split(",") for ln in lines[1:]]
    assert [r[i_status] for r in rows] == ["ok", "ok", "ok"]
    devs = [float(r[i_dev]) for r in rows]
    assert devs[0] == 0.0
    # quadratic in the deformation strength
    assert devs[2] / devs[1] == pytest.approx(4.0, rel=0.05)


def test_sweep_marks_failed_rows_and_continues(tmp_path):
    cfg = write_cfg(tmp_path, {"model": "minkowski2d",
                               "params": {"epsilon": 0.2}, "outputs": []})
    out = tmp_path / "sweep"
    rc = main(["sweep", str(cfg), "--param", "c_plus",
               "--values", "1.0,-1.0", "--out", str(out)])
    assert rc != 0
    lines = (out / "sweep.csv").read_text().splitlines()
    rows = [ln.split(",") for ln in lines[1:]]
    header = lines[0].split(",")
    status = [r[header.index("status")] for r in rows]
    assert status[0] == "ok"
    assert status[1].startswith("failed")


def test_sweep_rejects_unknown_parameter(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"model": "su2", "params": {"epsilon": 0.2},
                               "outputs": []})
    rc = main(["sweep", str(cfg), "--param", "gamma", "--values", "1,2",
               "--out", str(tmp_path / "s")])
    assert rc == 2


def test_parallel_sweep_matches_sequential(tmp_path):
    cfg = write_cfg(tmp_path, {"model": "kappa", "params": {"epsilon": 0.1},
                               "outputs": []})
    seq, par = tmp_path / "seq", tmp_path / "par"
    assert main(["sweep", str(cfg), "--param", "epsilon",
                 "--values", "0.05,0.1", "--out", str(seq)]) == 0
    os.environ["POISMECH_WORKERS"] = "2"
    try:
        assert main(["sweep", str(cfg), "--param", "epsilon",
                     "--values", "0.05,0.1", "--out", str(par)]) == 0
    finally:
        del os.environ["POISMECH_WORKERS"]
    assert (seq / "sweep.csv").read_bytes() == (par / "sweep.csv").read_bytes()


# --- certify ---------------------------------------------------------------

def test_certify_reports_and_passes(capsys):
    rc = main(["certify", "minkowski2d", "--epsilon", "0.2", "--points", "10"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "PASS" in out and "FAIL" not in out
    assert "jacobi_shifted" in out


def test_certify_writes_artifact_when_asked(tmp_path):
    out = tmp_path / "cert"
    rc = main(["certify", "kappa", "--epsilon", "0.3", "--points", "5",
               "--out", str(out)])
    assert rc == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["files"] == collect_files(out)


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.yaml")
