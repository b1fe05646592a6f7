"""tests/test_runner.py - CLI exit codes, artifact layout and byte-stable reports."""
import json

import pytest

from config.scenario_loader import load_scenario, preset_scenario, scenario_from_dict
from config.settings import EXIT_BUDGET, EXIT_CONFIG, EXIT_OK, PASS
from grid_space.grid_space import read_cells_csv, read_pgm
from runner.runner import parse_check, run_attractors, run_duality, run_oracle_sweep
from runner.runner_core.cli import main
from utils.errors import ConfigError

STAGE_FILES = {"cr.csv", "cr.json", "components.csv", "cr.pgm", "attractors.json", "duality.json",
               "duality.pgm", "report.json", "run.json"}


def write_scenario(tmp_path, **keys):
    d = {"name": "t", "membership": "disc", "generators": ["z^2"], "depth": 3}
    d.update(keys)
    p = tmp_path / "scenario.json"
    p.write_text(json.dumps(d))
    return p


def test_duality_command_writes_artifacts(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["duality", "--preset", "tiny_disc", "--out", str(out), "--quiet"]) == EXIT_OK
    names = {p.name for p in out.iterdir()}
    assert STAGE_FILES <= names
    assert "attractor_0_A.csv" in names and "attractor_0_basin.csv" in names
    assert "duality" in capsys.readouterr().out
    report = json.loads((out / "report.json").read_text())
    assert report["abelian"]["asserted"] is True
    assert report["duality"]["verdict"] in ("PASS", "FAIL")
    assert report["transitivity"]["word_budget"] == 2
    assert set(report["artifacts"]) <= names
    cr = read_cells_csv(out / "cr.csv")
    assert len(cr) == report["cr"]["cells"] > 0
    assert read_pgm(out / "cr.pgm").shape == (16, 16)


def test_reports_are_byte_stable(tmp_path):
    for sub in ("a", "b"):
        run_duality(preset_scenario("tiny_disc"), out_dir=tmp_path / sub)
    for name in ("report.json", "cr.csv", "components.csv", "attractors.json", "duality.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name


def test_thread_count_does_not_change_results(tmp_path):
    run_duality(preset_scenario("tiny_disc"), out_dir=tmp_path / "one", threads=1)
    run_duality(preset_scenario("tiny_disc"), out_dir=tmp_path / "two", threads=2)
    for name in ("report.json", "cr.csv", "attractors.json"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes(), name


def test_attractor_stage_certificates(tmp_path):
    rep = run_attractors(preset_scenario("tiny_disc"), out_dir=tmp_path)
    labels = [c["label"] for c in rep.certificates]
    assert labels == ["whole grid", "sublevel r=0.5", "reachable from [0.0, 0.0]"]
    assert rep.certificates[0]["status"] == "certified"
    whole = rep.attractors[0]
    assert whole["A_in_U"] and whole["U_in_basin"]
    assert rep.cr is None and rep.duality is None
    assert (tmp_path / "attractors.json").exists()
    assert not (tmp_path / "duality.json").exists()


def test_scenario_file_runs_cr(tmp_path):
    path = write_scenario(tmp_path, eps_schedule=[0.3], g_schedule="all:1", L=1)
    assert main(["cr", "--scenario", str(path), "--out", str(tmp_path / "o"), "--quiet"]) == EXIT_OK
    assert (tmp_path / "o" / "cr.csv").exists()
    assert not (tmp_path / "o" / "duality.json").exists()


@pytest.mark.parametrize("keys", [
    {"generators": []},
    {"generators": ["z/2"]},
    {"generators": ["z^2"], "alpha0": [1]},
    {"eps_schedule": [0.05, 0.1]},
    {"g_schedule": "all:x"},
    {"colour": "blue"},
    {"L": 0},
])
def test_config_errors_exit_2(tmp_path, keys):
    path = write_scenario(tmp_path, **keys)
    assert main(["cr", "--scenario", str(path), "--out", str(tmp_path / "o"), "--quiet"]) == EXIT_CONFIG


def test_missing_and_malformed_scenario_files(tmp_path):
    assert main(["cr", "--scenario", str(tmp_path / "nope.json"), "--quiet"]) == EXIT_CONFIG
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError) as info:
        load_scenario(bad)
    assert info.value.field == "scenario"
    assert main(["cr", "--preset", "no_such_preset", "--quiet"]) == EXIT_CONFIG


def test_raster_cap_exits_3(tmp_path):
    assert main(["cr", "--preset", "tiny_disc", "--depth", "16", "--out", str(tmp_path), "--quiet"]) == EXIT_BUDGET


def test_generator_error_names_its_index():
    s = scenario_from_dict({"generators": ["z^2", "z^^3"], "depth": 2})
    with pytest.raises(ConfigError) as info:
        run_duality(s)
    assert info.value.field == "generators[1]"


def test_parse_check_prints_canonical_text(capsys):
    assert main(["parse-check", "--expr", "z^2 + 0.25*z", "--quiet"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "z^2+0.25*z"
    assert main(["parse-check", "--expr", "z/2", "--quiet"]) == EXIT_CONFIG
    assert main(["parse-check", "--preset", "unit_disc_primes", "--quiet"]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["z^2", "z^3", "z^5"]


def test_parse_check_reports_index():
    with pytest.raises(ConfigError) as info:
        parse_check(["z", "z +"])
    assert info.value.field == "expr[1]"


def test_oracle_command(tmp_path, capsys):
    out = tmp_path / "oracle"
    assert main(["oracle", "--seeds", "3", "--n-max", "3", "--out", str(out), "--quiet"]) == EXIT_OK
    lines = (out / "oracle.jsonl").read_text().splitlines()
    assert len(lines) == 3
    assert [json.loads(l)["seed"] for l in lines] == [0, 1, 2]
    summary = json.loads((out / "oracle.json").read_text())
    assert summary["verdict"] == "PASS" and summary["failures"] == []
    assert "PASS" in capsys.readouterr().out
    again = tmp_path / "again"
    main(["oracle", "--seeds", "3", "--n-max", "3", "--out", str(again), "--quiet"])
    assert (again / "oracle.jsonl").read_bytes() == (out / "oracle.jsonl").read_bytes()


def test_oracle_rejects_large_state_spaces(tmp_path):
    assert main(["oracle", "--n-max", "9", "--out", str(tmp_path), "--quiet"]) == EXIT_CONFIG
    assert main(["oracle", "--seeds", "0", "--out", str(tmp_path), "--quiet"]) == EXIT_CONFIG


def test_oracle_sweep_reports_nonabelian_without_failing():
    summary = run_oracle_sweep(6, 4, abelian_only=False, seed=7)
    assert summary["systems"] == 6 and summary["base_seed"] == 7
    assert set(summary["groups"]) <= {"abelian", "nonabelian"}
    assert summary["verdict"] == PASS and summary["failures"] == []
    assert run_oracle_sweep(6, 4, abelian_only=False, seed=7, workers=2)["groups"] == summary["groups"]


def test_step_budget_must_allow_one_generator():
    with pytest.raises(ConfigError) as info:
        scenario_from_dict({"generators": ["z^2"], "L": 0})
    assert info.value.field == "L"
    assert scenario_from_dict({"generators": ["z^2"], "L": 1}).L == 1
