"""Config validation and the subgap command line."""

import json
from pathlib import Path

import pytest

from subgap import ConfigError
from subgap.cli import OUTDIR_ENV, main, resolve_outdir, validate_config

MINIMAL = {
    "fig2": {"experiment": "fig2", "W": 2.0, "T_DS": [1.0, 0.25], "T_SN": 0.25},
    "bounds_audit": {"experiment": "bounds_audit", "pairs": [[1.6, 0.0625]]},
    "recovery": {"experiment": "recovery", "W": 2.0, "T_DS": 0.25},
    "stability": {"experiment": "stability", "W": 2.0, "T_DS": 0.25},
    "sampling": {"experiment": "sampling", "W": 2.0, "T_SN": 0.25},
    "quantum_pipeline": {"experiment": "quantum_pipeline", "P": 1.0, "X": 0.5},
}


@pytest.mark.parametrize("kind", sorted(MINIMAL))
def test_minimal_config_validates(kind):
    got_kind, kwargs, grid, seed, outdir = validate_config(MINIMAL[kind])
    assert got_kind == kind
    assert grid is None and seed == 0 and outdir is None
    if "W" in MINIMAL[kind]:
        assert kwargs["w"] == 2.0


def test_missing_field_is_named():
    cfg = {"experiment": "recovery", "T_DS": 0.25}
    with pytest.raises(ConfigError, match="W"):
        validate_config(cfg)


def test_unknown_key_rejected():
    cfg = dict(MINIMAL["recovery"], bogus=1)
    with pytest.raises(ConfigError, match="bogus"):
        validate_config(cfg)


def test_bad_grid_is_named():
    cfg = dict(MINIMAL["sampling"], grid={"start": -1.0, "step": 0.25, "n": 7})
    with pytest.raises(ConfigError, match="grid"):
        validate_config(cfg)


def test_config_must_be_an_object():
    with pytest.raises(ConfigError):
        validate_config([1, 2, 3])


def test_unknown_experiment_rejected():
    with pytest.raises(ConfigError, match="experiment"):
        validate_config({"experiment": "frobnicate"})


def test_wrong_type_rejected():
    cfg = dict(MINIMAL["recovery"], W="two")
    with pytest.raises(ConfigError, match="W"):
        validate_config(cfg)


def test_outdir_precedence(monkeypatch, tmp_path):
    monkeypatch.setenv(OUTDIR_ENV, str(tmp_path / "env"))
    assert resolve_outdir("cli", "cfg") == Path("cli")
    assert resolve_outdir(None, "cfg") == Path("cfg")
    assert resolve_outdir(None, None) == tmp_path / "env"
    monkeypatch.delenv(OUTDIR_ENV)
    assert resolve_outdir(None, None) == Path("out")


def _write_cfg(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path

def test_run_reports_and_exits_zero(tmp_path):
    cfg = _write_cfg(tmp_path, dict(MINIMAL["quantum_pipeline"], seed=7))
    out = tmp_path / "out"
    assert main(["run", str(cfg), "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is True
    assert report["experiment"] == "quantum_pipeline"
    tomo = json.loads((out / "tomography.json").read_text())
    assert set(tomo) >= {"condition_number", "residual", "rank_gap", "fidelity"}


def test_run_seed_flag_overrides_config(tmp_path):
    cfg = _write_cfg(tmp_path, dict(MINIMAL["quantum_pipeline"], seed=7))
    out = tmp_path / "out"
    assert main(["run", str(cfg), "--out", str(out), "--seed", "123"]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["config"]["seed"] == 123


def test_run_missing_file_exits_2(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.json")]) == 2
    assert "cannot read config" in capsys.readouterr().err


def test_run_rejects_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["run", str(path)]) == 2
    assert "JSON" in capsys.readouterr().err


def test_run_names_missing_field_on_stderr(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, {"experiment": "recovery", "T_DS": 0.25})
    assert main(["run", str(cfg)]) == 2
    assert "W" in capsys.readouterr().err


def test_outdir_env_variable_is_honored(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTDIR_ENV, str(tmp_path / "envout"))
    cfg = _write_cfg(tmp_path, dict(MINIMAL["quantum_pipeline"], seed=7))
    assert main(["run", str(cfg)]) == 0
    assert (tmp_path / "envout" / "report.json").exists()


def test_fig2_subcommand_and_column_names(tmp_path):
    out = tmp_path / "fig2"
    assert main(["fig2", "--out", str(out)]) == 0
    header = (out / "fig2.csv").read_text().split("\n")[0]
    assert header == (
        "w,s_hat,s_hat_im,pwr_hat_T1,pwr_hat_T1_im,pwr_hat_T025,"
        "pwr_hat_T025_im,pwr_hat_T0015625,pwr_hat_T0015625_im,"
        "recovered_k2,recovered_k2_im"
    )
    assert (out / "fig2.svg").exists()


def test_audit_subcommand_and_column_names(tmp_path):
    out = tmp_path / "audit"
    assert main(["audit", "--out", str(out)]) == 0
    lines = (out / "bounds_audit.csv").read_text().strip().split("\n")
    assert lines[0] == "W,T,WT,lambda0,conc_ratio,spill_ratio,eps_grid,pass"
    assert len(lines) == 5
    assert all(line.endswith(",1") for line in lines[1:])


def test_runs_are_byte_identical(tmp_path):
    cfg = _write_cfg(tmp_path, dict(MINIMAL["quantum_pipeline"], seed=7))
    out1, out2 = tmp_path / "one", tmp_path / "two"
    assert main(["run", str(cfg), "--out", str(out1)]) == 0
    assert main(["run", str(cfg), "--out", str(out2)]) == 0
    names = sorted(p.name for p in out1.glob("*.csv"))
    assert names, "expected CSV artifacts"
    for name in names + ["tomography.json"]:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name
