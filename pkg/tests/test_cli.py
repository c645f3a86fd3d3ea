from __future__ import annotations

import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from rmwitness import gf_tower
from rmwitness.cli import FORCED_MAX_ORDER, main
from rmwitness.report import bundled_recipes, load_recipe, run_recipe, strip_timestamps, validate

EXPECTED_RECIPES = {
    "gabidulin_n4_binomial", "gabidulin_n4_pigeonhole", "gabidulin_m8_scaled_binomial",
    "power_gabidulin_hat", "twisted_q3_n4", "gabidulin_q2_n2_lift",
}


@pytest.fixture(autouse=True)
def _restore_guards():
    saved = gf_tower.MAX_ORDER
    yield
    gf_tower.MAX_ORDER = saved


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- run -------------------------------------------------------------------

def test_bundled_recipes_listed(capsys):
    code, out, _ = run_cli(capsys, "run", "--list")
    assert code == 0
    assert set(out.split()) == EXPECTED_RECIPES == set(bundled_recipes())


def test_run_writes_json_csv_and_png(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "run", "gabidulin_n4_binomial", "--out-dir", str(tmp_path))
    assert code == 0
    summary = json.loads(out)
    assert summary["verdict"] == "verified"
    doc = json.loads((tmp_path / "gabidulin_n4_binomial.json").read_text())
    validate(doc, "experiment")
    assert doc["schema_version"] == "1.0"
    png = (tmp_path / "gabidulin_n4_binomial_list_sizes.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
    rows = list(csv.DictReader(io.StringIO((tmp_path / "gabidulin_n4_binomial_claims.csv").read_text())))
    assert rows and {"theorem_id", "applicable", "at_all"} <= set(rows[0])


def test_run_csv_format_prints_claims(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "run", "gabidulin_n4_pigeonhole", "--out-dir", str(tmp_path),
                           "--format", "csv", "--no-figure")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert any(r["theorem_id"] == "binomial_family" and r["applicable"] == "True" for r in rows)
    assert not (tmp_path / "gabidulin_n4_pigeonhole_list_sizes.png").exists()


def test_replay_is_identical_modulo_timestamps():
    rec = load_recipe("gabidulin_n4_binomial")
    a, b = run_recipe(rec), run_recipe(rec)
    assert "timestamps" in a
    assert json.dumps(strip_timestamps(a), sort_keys=True) == json.dumps(strip_timestamps(b), sort_keys=True)


def test_run_bad_tau_exits_2_and_names_hypothesis(tmp_path, capsys):
    rec = load_recipe("gabidulin_n4_pigeonhole")
    rec["witness"]["tau"] = 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(rec))
    code, out, err = run_cli(capsys, "run", str(path), "--out-dir", str(tmp_path), "--no-figure")
    assert code == 2
    assert "floor((d-1)/2)+1 <= tau" in err
    assert json.loads(out)["verdict"] == "hypothesis_violation"


def test_missing_recipe_exits_2(capsys):
    code, _, err = run_cli(capsys, "run", "no_such_recipe")
    assert code == 2 and err


# -- other subcommands -----------------------------------------------------

def test_field_guard_and_force(capsys):
    code, _, err = run_cli(capsys, "field", "--p", "2", "--m", "30")
    assert code == 2 and "FieldTooLarge" in err
    # building a field past the guard takes seconds, so check the raised limit directly
    code, _, _ = run_cli(capsys, "--force", "bounds", "gaussian", "--n", "2", "--r", "1", "--q", "2")
    assert code == 0 and gf_tower.MAX_ORDER == FORCED_MAX_ORDER > 2 ** 22


def test_field_element(capsys):
    code, out, _ = run_cli(capsys, "field", "--p", "2", "--m", "4", "--element", "2")
    doc = json.loads(out)
    assert code == 0 and doc["element"]["sigma"] == 4 and doc["element"]["inverse"] == 9


def test_poly_subcommand(capsys):
    code, out, _ = run_cli(capsys, "poly", "--p", "2", "--m", "4", "--coeffs", "1,0,1", "--eval", "0 1 2")
    doc = json.loads(out)
    assert code == 0
    assert doc["sigma_degree"] == 2 and doc["kernel_dim"] == 2 and doc["subspace_polynomial"]
    assert doc["eval"]["1"] == 0


def test_family_subcommand(capsys):
    code, out, _ = run_cli(capsys, "family", "--kind", "Binomial_N", "--p", "2", "--n", "4", "--t", "2",
                           "--check", "--members")
    doc = json.loads(out)
    assert code == 0
    assert doc["expected_size"] == doc["actual_size"] == 5 and doc["all_max_kernel"]
    assert len(doc["members"]) == 5
    code, _, err = run_cli(capsys, "family", "--kind", "Tri1", "--p", "2", "--n", "8", "--t", "3")
    assert code == 2 and "ParamViolation" in err


def test_code_subcommand(capsys):
    code, out, _ = run_cli(capsys, "code", "--p", "2", "--m", "4", "--k", "2")
    doc = json.loads(out)
    assert code == 0 and doc["d"] == 3 and doc["singleton"]["is_MRD"]


def test_bounds_subcommands(capsys):
    _, out, _ = run_cli(capsys, "bounds", "johnson", "--m", "8", "--n", "8", "--h", "2")
    assert json.loads(out)["first_integer"] == 6
    _, out, _ = run_cli(capsys, "bounds", "gaussian", "--n", "4", "--r", "2", "--q", "2")
    assert json.loads(out)["value"] == 35
    _, out, _ = run_cli(capsys, "bounds", "list", "--n", "4", "--tau", "2", "--h", "2", "--q", "2", "--m", "4")
    assert json.loads(out)["value"] == 35
    code, _, err = run_cli(capsys, "bounds", "johnson", "--m", "4", "--n", "4", "--h", "0")
    assert code == 2 and "NegativeRadicand" in err


def test_witness_build_verify_and_lift(tmp_path, capsys):
    rep = tmp_path / "w.json"
    code, _, _ = run_cli(capsys, "witness", "build", "--spec", "gabidulin_n4_pigeonhole", "--exhaustive",
                         "--out", str(rep))
    assert code == 0
    doc = json.loads(rep.read_text())
    validate(doc, "witness")
    assert doc["verified"] and doc["list_size"] >= 35
    code, out, _ = run_cli(capsys, "witness", "verify", str(rep), "--exhaustive")
    assert code == 0 and json.loads(out)["verified"]
    code, out, _ = run_cli(capsys, "lift", str(rep))
    lifted = json.loads(out)
    assert code == 0 and lifted["passed"] and lifted["subspace_radius"] == 4

    # a listed word replaced by the non-codeword w: verification failure, exit 3
    doc["list"][1] = doc["w"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "witness", "verify", str(bad))
    assert code == 3 and not json.loads(out)["verified"]
    # w + (alpha_1..alpha_4) sits at rank distance 4 > 2 from w, so its lift leaves the ball
    pts = doc["spec"]["code"]["points"]
    doc["list"][1] = [a ^ b for a, b in zip(doc["w"], pts)]
    bad.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "lift", str(bad))
    assert code == 3 and not json.loads(out)["passed"]


def test_analyze_subcommand(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--recipe", "gabidulin_n4_pigeonhole", "--execute")
    rows = json.loads(out)["claims"]
    assert code == 0
    ran = [r for r in rows if r["applicable"]]
    assert ran and all(r["executed"]["verified"] for r in ran)
    code, out, _ = run_cli(capsys, "analyze", "--p", "2", "--m", "4", "--k", "1", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("theorem_id")


def test_console_script_entry_point(tmp_path):
    exe = shutil.which("rmwitness")
    cmd = [exe] if exe else [sys.executable, "-m", "rmwitness.cli"]
    res = subprocess.run(cmd + ["bounds", "gaussian", "--n", "2", "--r", "1", "--q", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["value"] == 3
