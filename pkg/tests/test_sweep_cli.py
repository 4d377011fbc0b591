import csv
import json

import pytest

from exharm import cli
from exharm.mchf import write_basis_file, table_basis
from exharm.model import derive_params
from exharm.sweep import (
    ConfigError, SweepConfig, compute_point, format_value, point_scf, run, seed_basis,
)


def _read(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


# ---------------------------------------------------------------- configuration

def test_json_config_and_flag_precedence(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"masses": [10], "omegas": [0.1, 1], "jobs": 3, "output_dir": "a"}))
    cfg = SweepConfig.from_json(cfg_path)
    assert cfg.masses == (10.0,) and cfg.omegas == (0.1, 1.0) and cfg.jobs == 3
    merged = cfg.override(jobs=1, output_dir=None, omegas=[2.0])
    assert merged.jobs == 1 and merged.output_dir == "a" and merged.omegas == (2.0,)


def test_config_rejects_unknown_keys_and_bad_json(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"masses": [1], "mass": 3}))
    with pytest.raises(ConfigError, match="unknown keys"):
        SweepConfig.from_json(p)
    p.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        SweepConfig.from_json(p)
    p.write_text("{")
    with pytest.raises(ConfigError):
        SweepConfig.from_json(p)


def test_output_dir_falls_back_to_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("EXHARM_OUTPUT_DIR", str(tmp_path / "env"))
    assert SweepConfig().resolved_output_dir() == tmp_path / "env"
    assert SweepConfig(output_dir=str(tmp_path / "x")).resolved_output_dir() == tmp_path / "x"
    monkeypatch.delenv("EXHARM_OUTPUT_DIR")
    with pytest.raises(ConfigError, match="EXHARM_OUTPUT_DIR"):
        SweepConfig().resolved_output_dir()


@pytest.mark.parametrize("kwargs, match", [
    ({"masses": ()}, "masses"),
    ({"omegas": ()}, "omegas"),
    ({"omegas": (-1.0,)}, "positive"),
    ({"tasks": ("energy",)}, "unknown tasks"),
    ({"basis_mode": "fit"}, "basis_mode"),
    ({"adiabatic_variant": "x"}, "adiabatic_variant"),
    ({"basis_file": "/nonexistent/basis.txt"}, "not found"),
    ({"jobs": 0}, "jobs"),
    ({"n_initial": 1}, "n_initial"),
    ({"n_max": 100}, "n_max"),
])
def test_validation_errors(tmp_path, kwargs, match):
    cfg = SweepConfig(output_dir=str(tmp_path), **kwargs)
    with pytest.raises(ConfigError, match=match):
        cfg.validate()


def test_output_dir_must_be_a_directory(tmp_path):
    f = tmp_path / "file"
    f.write_text("")
    with pytest.raises(ConfigError, match="not a directory"):
        SweepConfig(output_dir=str(f)).validate()


def test_tables_task_expands():
    cfg = SweepConfig(tasks=("tables",))
    assert "tables" not in cfg.expanded_tasks()
    assert {"energies", "correlation", "adiabatic", "hills"} <= set(cfg.expanded_tasks())
    assert SweepConfig(adiabatic_variant="both").variants() == ("table-consistent", "as-printed")


def test_format_value():
    assert format_value(1.0 / 3.0) == "0.333333"
    assert format_value("as-printed") == "as-printed"


# ---------------------------------------------------------------- basis sources

def test_basis_file_takes_priority(tmp_path):
    path = tmp_path / "b.txt"
    write_basis_file(path, *table_basis(10, 1.0))
    cfg = SweepConfig(basis_file=str(path))
    res, source = point_scf(cfg, derive_params(10, 1.0))
    assert source == f"file:{path}"
    assert res.energy == pytest.approx(1.8109, abs=2e-3)


def test_off_grid_point_uses_optimized_seed():
    p = derive_params(3.0, 0.5)
    be, bp = seed_basis(p)
    assert len(be) == len(bp) == 7
    res, source = point_scf(SweepConfig(), p)
    assert source == "even-tempered+optimized"
    assert res.converged


def test_compute_point_records_errors_instead_of_raising():
    res = compute_point(SweepConfig(tasks=("energies",)), -1.0, 1.0)
    assert res.error is not None
    assert res.error.startswith("ParameterError")


# ---------------------------------------------------------------- sweeps

def test_run_writes_tasks_and_manifest(tmp_path):
    cfg = SweepConfig(
        masses=(207,), omegas=(1.0,), tasks=("energies", "hills", "intracule"),
        output_dir=str(tmp_path), jobs=1,
    )
    assert run(cfg) == 0
    energies = _read(tmp_path / "energies.csv")
    assert energies[0][:3] == ["m", "omega", "E_exact"]
    assert float(energies[1][2]) == pytest.approx(1.6834, abs=1e-3)
    manifest = (tmp_path / "manifest.txt").read_text()
    assert "status=ok" in manifest and "converged[energies]: true" in manifest
    curve = _read(tmp_path / "hills" / "m207_w1_e.csv")
    assert len(curve) == 2001


def test_run_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / str(k)
        cfg = SweepConfig(masses=(1, 10), omegas=(0.1,), tasks=("correlation", "adiabatic"),
                          output_dir=str(out), jobs=2)
        assert run(cfg) == 0
        outs.append(out)
    for name in ("correlation.csv", "adiabatic.csv"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()


def test_run_fails_only_when_every_point_fails(tmp_path):
    cfg = SweepConfig(masses=(1,), omegas=(1.0,), output_dir=str(tmp_path), jobs=1,
                      basis_mode="table-a1", n_max=2000, n_initial=1000, grid_tol=1e-300)
    # a grid budget too small to converge is flagged but does not fail the point
    assert run(cfg) == 0
    assert "converged[energies]: false" in (tmp_path / "manifest.txt").read_text()


# ---------------------------------------------------------------- command line

def test_cli_run_and_help(tmp_path, capsys):
    assert cli.main(["run", "--masses", "10", "--omegas", "1", "--tasks", "adiabatic",
                     "--adiabatic-variant", "both", "--output-dir", str(tmp_path), "--jobs", "1"]) == 0
    rows = _read(tmp_path / "adiabatic.csv")
    assert [r[2] for r in rows[1:]] == ["table-consistent", "as-printed"]
    with pytest.raises(SystemExit):
        cli.main(["run", "--help"])
    assert "later winning" in capsys.readouterr().out


def test_cli_reports_config_errors(tmp_path, capsys):
    assert cli.main(["run", "--omegas", "", "--output-dir", str(tmp_path)]) == 2
    assert "omegas must be non-empty" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        cli.main(["run", "--masses", "a,b"])


def test_cli_figure(tmp_path, capsys):
    assert cli.main(["figure", "5", "--m", "207", "--omega", "1", "--output-dir", str(tmp_path)]) == 0
    path = tmp_path / "figure5" / "m207_w1_e.csv"
    assert str(path) in capsys.readouterr().out
    rows = _read(path)
    assert rows[0] == ["r", "hill", "hill_rdf"] and len(rows) == 2001


@pytest.mark.slow
def test_cli_table_compare(tmp_path, capsys):
    assert cli.main(["table", "4", "--compare", "--output-dir", str(tmp_path)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    header = lines[0].split(",")
    assert "E_ad_published" in header and "Delta_E_diff" in header
    assert len(lines) == 25
    diffs = [abs(float(x)) for line in lines[1:] for x in line.split(",")[-3:]]
    assert max(diffs) < 1e-3
    assert (tmp_path / "table4.csv").exists()
