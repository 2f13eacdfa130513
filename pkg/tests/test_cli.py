"""Command-line surface: scenario parsing, output formats, exit codes, and
byte-level determinism."""

import json

import pytest

from ccsched.cli import (EXIT_IO, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION,
                         EXIT_VERIFY, SIGMA_COLUMNS, SWEEP_COLUMNS,
                         load_scenario, run_command)
from support import REF_ASSOCIATION

REF_SCENARIO = {
    "P": 3, "tbar": 1, "alpha": 6, "L": 6, "N": 12,
    "association": {str(u): p for u, p in REF_ASSOCIATION.items()},
    "eta_hat": 4, "Q": 3, "strategy": "A", "beta": 3,
}


@pytest.fixture
def scenario(tmp_path):
    def write(doc, name="scenario.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return write


# ---- scenario parsing ----

def test_load_scenario_with_association(scenario):
    cfg, params, demands, extras = load_scenario(scenario(REF_SCENARIO))
    assert cfg.K == 12 and cfg.eta_vector() == (5, 4, 3)
    assert (params.eta_hat, params.Q, params.beta, params.strategy) == (4, 3, 3, "A")
    assert demands[13 - 1] == 12  # default demand: file mod1(k, N)
    assert extras == {"seed": 0, "samples": 2000}


def test_load_scenario_with_eta_vector(scenario):
    doc = {"P": 3, "tbar": 1, "alpha": 6, "L": 6, "N": 12, "eta": [5, 4, 3]}
    cfg, params, _, _ = load_scenario(scenario(doc))
    assert cfg.eta_vector() == (5, 4, 3)
    assert params is None


def test_load_scenario_beta_defaults_to_min(scenario):
    doc = dict(REF_SCENARIO)
    del doc["beta"]
    _, params, _, _ = load_scenario(scenario(doc))
    assert params.beta == 4   # min(alpha=6, eta_hat=4)


def test_load_scenario_demand_overrides(scenario):
    doc = dict(REF_SCENARIO)
    doc["demands"] = {"1": 7}
    _, _, demands, _ = load_scenario(scenario(doc))
    assert demands[1] == 7 and demands[2] == 2


def test_scenario_requires_exactly_one_association_form(scenario):
    doc = dict(REF_SCENARIO)
    doc["eta"] = [5, 4, 3]
    assert run_command(["dof", "--scenario", scenario(doc)]) == EXIT_VALIDATION
    doc2 = dict(REF_SCENARIO)
    del doc2["association"]
    assert run_command(["dof", "--scenario", scenario(doc2)]) == EXIT_VALIDATION


def test_scenario_rejects_bad_demand(scenario):
    doc = dict(REF_SCENARIO)
    doc["demands"] = {"1": 13}
    assert run_command(["dof", "--scenario", scenario(doc)]) == EXIT_VALIDATION


# ---- exit codes ----

def test_missing_scenario_file_is_io_error(tmp_path):
    assert run_command(["dof", "--scenario", str(tmp_path / "nope.json")]) == EXIT_IO


def test_unreadable_json_is_parse_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run_command(["dof", "--scenario", str(path)]) == EXIT_PARSE


def test_unknown_command_is_parse_error(capsys):
    assert run_command(["frobnicate"]) == EXIT_PARSE
    capsys.readouterr()


def test_sweep_scenario_needs_no_fixed_params(scenario, tmp_path, capsys):
    doc = {"P": 3, "tbar": 1, "alpha": 6, "L": 6, "N": 12, "eta": [5, 4, 3]}
    out = tmp_path / "sweep.csv"
    assert run_command(["sweep", "--scenario", scenario(doc), "--out", str(out)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["dof_max"] == "44/5"
    assert (summary["eta_hat"], summary["Q"], summary["strategy"]) == (5, 3, "B")


def test_dof_without_fixed_params_is_validation_error(scenario):
    doc = {"P": 3, "tbar": 1, "alpha": 6, "L": 6, "N": 12, "eta": [5, 4, 3]}
    assert run_command(["dof", "--scenario", scenario(doc)]) == EXIT_VALIDATION


# ---- dof output ----

def test_dof_output_contains_exact_and_decimal(scenario, tmp_path):
    out = tmp_path / "dof.json"
    code = run_command(["dof", "--scenario", scenario(REF_SCENARIO), "--out", str(out)])
    assert code == EXIT_OK
    text = out.read_text()
    assert "39/10" in text
    doc = json.loads(text)
    assert doc["dof"] == "39/10"
    assert doc["dof_decimal"] == 3.9
    assert doc["closed_form"] == "39/10"
    assert doc["verified"] is True


# ---- schedule round trip and verify ----

def test_schedule_then_verify_roundtrip(scenario, tmp_path):
    sched = tmp_path / "schedule.json"
    assert run_command(["schedule", "--scenario", scenario(REF_SCENARIO),
                        "--out", str(sched)]) == EXIT_OK
    doc = json.loads(sched.read_text())
    assert set(doc) == {"meta", "cc_transmissions", "uc_rounds"}
    assert doc["meta"]["dof"] == "39/10"
    cw = doc["cc_transmissions"][0]["codewords"][0]
    assert set(cw) == {"recipient", "file", "profiles", "q", "nullset"}
    assert run_command(["verify", "--scenario", scenario(REF_SCENARIO),
                        "--schedule", str(sched)]) == EXIT_OK


def test_verify_flags_corrupted_schedule(scenario, tmp_path):
    sched = tmp_path / "schedule.json"
    run_command(["schedule", "--scenario", scenario(REF_SCENARIO), "--out", str(sched)])
    doc = json.loads(sched.read_text())
    del doc["cc_transmissions"][0]
    sched.write_text(json.dumps(doc))
    assert run_command(["verify", "--scenario", scenario(REF_SCENARIO),
                        "--schedule", str(sched)]) == EXIT_VERIFY


def test_verify_rejects_malformed_schedule_file(scenario, tmp_path):
    bad = tmp_path / "schedule.json"
    bad.write_text("[1, 2")
    assert run_command(["verify", "--scenario", scenario(REF_SCENARIO),
                        "--schedule", str(bad)]) == EXIT_PARSE


def test_verify_without_schedule_rebuilds(scenario):
    assert run_command(["verify", "--scenario", scenario(REF_SCENARIO)]) == EXIT_OK


# ---- CSV formats ----

def test_sweep_csv_schema_and_infeasible_rows(scenario, tmp_path, capsys):
    doc = {"P": 3, "tbar": 1, "alpha": 6, "L": 6, "N": 12, "eta": [5, 4, 3]}
    out = tmp_path / "sweep.csv"
    run_command(["sweep", "--scenario", scenario(doc), "--out", str(out)])
    capsys.readouterr()
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert lines[1] == "1,2,A,1,3,9,3,3,4,1,4.000000,true"
    assert lines[3] == "1,4,A,1,3,9,,,,,,false"
    assert lines[-1] == "5,3,B,5,12,0,30,0,44,5,8.800000,true"


def test_sigma_csv_schema(scenario, tmp_path, capsys):
    doc = {"P": 3, "tbar": 1, "alpha": 2, "L": 2, "N": 4, "eta": [2, 1, 1],
           "samples": 25, "seed": 3}
    out = tmp_path / "sigma.csv"
    assert run_command(["sigma-experiment", "--scenario", scenario(doc),
                        "--out", str(out)]) == EXIT_OK
    meta = json.loads(capsys.readouterr().out)
    assert meta["samples"] == 25 and meta["seed"] == 3
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(SIGMA_COLUMNS)
    for line in lines[1:]:
        bin_str, n, dof_m, baseline, opt = line.split(",")
        assert float(bin_str) >= 0 and int(n) > 0
        assert baseline == "2"
        float(dof_m), float(opt)


def test_cli_samples_flag_overrides_scenario(scenario, tmp_path, capsys):
    doc = {"P": 3, "tbar": 1, "alpha": 2, "L": 2, "N": 4, "eta": [2, 1, 1],
           "samples": 25, "seed": 3}
    out = tmp_path / "sigma.csv"
    run_command(["sigma-experiment", "--scenario", scenario(doc),
                 "--out", str(out), "--samples", "10", "--seed", "4"])
    meta = json.loads(capsys.readouterr().out)
    assert meta["samples"] == 10 and meta["seed"] == 4


# ---- determinism ----

def test_repeated_runs_are_byte_identical(scenario, tmp_path, capsys):
    sc = scenario(REF_SCENARIO)
    outputs = []
    for i in (1, 2):
        sched = tmp_path / f"sched{i}.json"
        run_command(["schedule", "--scenario", sc, "--out", str(sched)])
        outputs.append(sched.read_bytes())
    assert outputs[0] == outputs[1]
    capsys.readouterr()
