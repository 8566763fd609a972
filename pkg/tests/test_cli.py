import json

import jsonschema
import numpy as np
import pytest
from click.testing import CliRunner

import cencov_ncp as c
from cencov_ncp import fileio
from cencov_ncp.cli import main

# machine-readable output contracts for the --json flag, by subcommand
SCHEMAS = {
    "validate": {
        "type": "object",
        "required": ["file", "kind", "passed"],
        "properties": {"file": {"type": "string"}, "kind": {"type": "string"},
                       "passed": {"type": "boolean"}},
    },
    "gns": {
        "type": "object",
        "required": ["dim", "ideal_dim", "gram_spectrum"],
        "properties": {"dim": {"type": "integer"},
                       "ideal_dim": {"type": "integer"},
                       "gram_spectrum": {"type": "array",
                                         "items": {"type": "number"}}},
    },
    "fisher": {
        "type": "object",
        "required": ["fisher"],
        "properties": {"fisher": {"type": "number"},
                       "classical_fisher": {"type": "number"},
                       "agreement_deficit": {"type": "number"}},
    },
    "crb": {
        "type": "object",
        "required": ["bound"],
        "properties": {"bound": {"type": "number"},
                       "second_moment": {"type": "number"},
                       "slack": {"type": "number"},
                       "saturated": {"type": "boolean"}},
    },
    "cp": {
        "type": "object",
        "required": ["is_cp", "min_choi_eigenvalue"],
        "properties": {"is_cp": {"type": "boolean"},
                       "min_choi_eigenvalue": {"type": "number"}},
    },
    "pipeline": {
        "type": "object",
        "required": ["stages", "passed"],
        "properties": {"stages": {"type": "array"},
                       "passed": {"type": "boolean"}},
    },
}


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)


def jout(result, schema=None):
    data = json.loads(result.output)
    if schema is not None:
        jsonschema.validate(data, SCHEMAS[schema])
    return data


def test_validate_groupoid(runner, fixture_dir):
    r = invoke(runner, "--json", "validate", fixture_dir / "pair2.json")
    assert r.exit_code == 0
    data = jout(r, "validate")
    assert data["kind"] == "groupoid" and data["passed"] is True


def test_validate_state_and_kernel(runner, fixture_dir):
    r = invoke(runner, "--json", "validate", fixture_dir / "rho.json")
    assert r.exit_code == 0 and jout(r)["passed"] is True
    r = invoke(runner, "--json", "validate", fixture_dir / "idk.json")
    assert r.exit_code == 0 and jout(r)["kind"] == "kernel"


def test_validate_model_and_algebra(runner, fixture_dir):
    r = invoke(runner, "--json", "validate", fixture_dir / "coin_model.json")
    assert r.exit_code == 0 and jout(r)["kind"] == "model"
    r = invoke(runner, "--json", "validate", fixture_dir / "pm_half.json")
    assert r.exit_code == 0 and jout(r)["kind"] == "algebra"


def test_validate_missing_file_exit_2(runner, fixture_dir):
    r = invoke(runner, "validate", fixture_dir / "nope.json")
    assert r.exit_code == 2


def test_validate_bad_groupoid_exit_1(runner, fixture_dir):
    data = json.loads((fixture_dir / "pair2.json").read_text())
    data["units"]["1"] = "(1,2)"
    bad = fixture_dir / "bad_groupoid.json"
    bad.write_text(json.dumps(data))
    r = invoke(runner, "validate", bad)
    assert r.exit_code == 1


def test_validate_bad_state_exit_1(runner, fixture_dir):
    bad = fixture_dir / "bad_state.json"
    bad.write_text(json.dumps({
        "fmt": fileio.FMT, "groupoid": "pair2.json",
        "phi_re": {"(1,1)": 1.0, "(2,2)": 1.0, "(1,2)": 9.0, "(2,1)": 9.0},
    }))
    r = invoke(runner, "validate", bad)
    assert r.exit_code == 1


def test_validate_bad_fmt_exit_2(runner, fixture_dir):
    bad = fixture_dir / "bad_fmt.json"
    bad.write_text(json.dumps({"fmt": "other/1", "K": [[1.0]]}))
    r = invoke(runner, "validate", bad)
    assert r.exit_code == 2


def test_compose_and_output(runner, fixture_dir):
    out = fixture_dir / "composed.json"
    r = invoke(runner, "--json", "compose", fixture_dir / "idk.json",
               fixture_dir / "idk.json", "-o", out)
    assert r.exit_code == 0 and jout(r)["passed"] is True
    Pi = fileio.load_kernel(out)
    assert np.abs(Pi.pi - c.identity_kernel(c.pair_groupoid(2)).pi).max() < 1e-12


def test_push_and_output(runner, fixture_dir):
    out = fixture_dir / "pushed.json"
    r = invoke(runner, "--json", "push", fixture_dir / "rho.json",
               fixture_dir / "idk.json", "-o", out)
    assert r.exit_code == 0 and jout(r)["passed"] is True
    rho = fileio.load_state(out)
    orig = fileio.load_state(fixture_dir / "rho.json")
    assert np.abs(rho.phi - orig.phi).max() < 1e-12


def test_pull_and_output(runner, fixture_dir):
    out = fixture_dir / "pulled.json"
    r = invoke(runner, "--json", "pull", fixture_dir / "idk.json",
               fixture_dir / "sz.json", "-o", out)
    assert r.exit_code == 0
    a = fileio.load_algebra_element(out)
    orig = fileio.load_algebra_element(fixture_dir / "sz.json")
    assert np.abs(a.coeff - orig.coeff).max() < 1e-12


def test_pipeline(runner, fixture_dir):
    out = fixture_dir / "final.json"
    r = invoke(runner, "--json", "pipeline", fixture_dir / "pipe.json", "-o", out)
    assert r.exit_code == 0
    data = jout(r, "pipeline")
    assert len(data["stages"]) == 2
    assert all(s["normalization_deficit"] < 1e-9 for s in data["stages"])
    fileio.load_state(out)  # output is a valid state file


def test_gns_command(runner, fixture_dir):
    r = invoke(runner, "--json", "gns", fixture_dir / "rho.json")
    assert r.exit_code == 0
    data = jout(r, "gns")
    assert data["dim"] == 4 and data["ideal_dim"] == 0
    assert len(data["gram_spectrum"]) == 4


def test_fisher_command(runner, fixture_dir):
    r = invoke(runner, "--json", "fisher", fixture_dir / "coin_model.json")
    assert r.exit_code == 0
    data = jout(r, "fisher")
    assert data["fisher"] == pytest.approx(4.0, abs=1e-3)
    assert data["agreement_deficit"] < 1e-6


def test_crb_command_with_estimator(runner, fixture_dir):
    r = invoke(runner, "--json", "crb", fixture_dir / "coin_model.json",
               "--estimator", fixture_dir / "pm_half.json")
    assert r.exit_code == 0
    data = jout(r, "crb")
    assert data["bound"] == pytest.approx(0.25, abs=1e-4)
    assert data["second_moment"] == pytest.approx(0.25, abs=1e-9)
    assert data["saturated"] is True


def test_cp_command(runner, fixture_dir):
    r = invoke(runner, "--json", "cp", fixture_dir / "transpose.json")
    assert r.exit_code == 0
    data = jout(r, "cp")
    assert data["is_cp"] is False and data["min_choi_eigenvalue"] < -0.5
    r = invoke(runner, "--json", "cp", fixture_dir / "idk.json")
    assert r.exit_code == 0 and jout(r)["is_cp"] is True


def test_crb_zero_information_exit_3(runner, fixture_dir):
    # constant model: same state at every grid point
    states = {s: "coin_0.0.json" for s in ("-0.2", "-0.1", "0.0", "0.1", "0.2")}
    flat = fixture_dir / "flat_model.json"
    flat.write_text(json.dumps({
        "fmt": fileio.FMT, "groupoid": "triv2.json", "s0": 0.0,
        "interval": [-0.2, 0.2], "grid": [0.0], "states": states,
    }))
    r = invoke(runner, "crb", flat)
    assert r.exit_code == 3


def test_json_output_deterministic(runner, fixture_dir):
    r1 = invoke(runner, "--json", "gns", fixture_dir / "rho.json")
    r2 = invoke(runner, "--json", "gns", fixture_dir / "rho.json")
    assert r1.output == r2.output
