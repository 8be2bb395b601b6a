import csv
import io
import json
import subprocess
import sys

import pytest

from wmds.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_rank_one(capsys):
    code, out, _ = run(["verify", "--preset", "rank1-n2"], capsys)
    report = json.loads(out)
    assert code == 0 and report["ok"]
    for key in ("involution_braid", "cocycle", "invariance", "local_fe", "twisted_fe",
                "twisted_multiplicativity", "gauss_relations", "n1_oracle", "convergence_bound",
                "rank_one_closed_form", "rank_one_z"):
        assert report[key]["ok"], key


def test_malformed_cartan_matrix(capsys):
    code, out, err = run(["roots", "--cartan", '{"A": [[3, -1], [-1, 2]]}'], capsys)
    assert code == 2 and out == ""
    payload = json.loads(err)
    assert payload["error"] == "InputError" and "a_00" in payload["message"]


@pytest.mark.parametrize("argv", [
    ["nosuch"],
    ["roots"],
    ["roots", "--preset", "a2-n2", "--depth", "0"],
    ["zsum", "--config", "{not json"],
    ["hcoeff", "--preset", "a2-n2", "--m", "[[1]]"],
    ["gauss", "--q0", "5", "--n", "3", "--c", "[0,1]"],
])
def test_input_errors_exit_two(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert "error" in json.loads(err)


def test_nseries_a2_n1_cross_check(capsys, tmp_path):
    rep = tmp_path / "report.json"
    code, out, _ = run(["nseries", "--preset", "a2-n1", "--cap", "4", "--report", str(rep)], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k1,k2,d,coefficient"
    assert lines[1] == "0,0,0,1" and "1,0,1,-1" in lines
    report = json.loads(rep.read_text())
    assert report["ok"] and report["n1_oracle"]["ok"]
    assert set(report) >= {"involution", "braid", "cocycle", "invariance", "fe_checks"}


def test_nseries_json_with_lambda(capsys):
    code, out, _ = run(["nseries", "--preset", "a2-n1", "--lam", "1,0", "--cap", "3", "--format", "json"], capsys)
    payload = json.loads(out)
    assert code == 0 and payload["report"]["n1_oracle"]["ok"]
    assert payload["terms"][0] == {"beta": [0, 0], "coefficient": "1", "d": 0}


def test_roots_and_weyl_tables(capsys):
    _, out, _ = run(["roots", "--preset", "affine-a1-n2", "--depth", "3"], capsys)
    assert out.splitlines()[0] == "k1,k2,depth,mult,is_real,m_alpha"
    assert "1,1,2,1,0,2" in out.splitlines()
    _, out, _ = run(["weyl", "--preset", "a2-n2", "--length", "5"], capsys)
    assert len(out.splitlines()) == 7


def test_hcoeff_rank_one(capsys):
    code, out, _ = run(["hcoeff", "--preset", "rank1-n2", "--degree", "2"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 + 31
    assert rows[1][:3] == ["[1]", "0", "1"]
    deg2 = [r for r in rows[1:] if r[1] == "2"]
    # H(pi^2) = 0 for the five squares of linear primes, |H|^2 = 25 otherwise
    zeros = [r for r in deg2 if r[2] == "0"]
    assert len(deg2) == 25 and len(zeros) == 5
    assert all(abs(complex(float(r[3]), float(r[4]))) == pytest.approx(5) for r in deg2 if r[2] != "0")


def test_gauss_subcommand(capsys):
    code, out, _ = run(["gauss", "--q0", "5", "--n", "2", "--c", "[0,1]", "--f", "[2,1]", "--g", "[0,1]"], capsys)
    payload = json.loads(out)
    assert code == 0
    assert payload["gauss_sum"]["abs2"] == "5"
    assert abs(payload["gauss_sum"]["re"] - 5 ** 0.5) < 1e-12
    assert payload["residue_symbol"]["exponent"] == 1


def test_zsum_subcommand(capsys):
    cfg = json.dumps({"preset": "rank1-n2", "N_max": 1, "s": [3]})
    code, out, _ = run(["zsum", "--config", cfg], capsys)
    payload = json.loads(out)
    assert code == 0
    assert abs(payload["partial_sum_re"] - (1 + 5 ** 0.5 / 25)) < 1e-12
    assert len(payload["shells"]) == 2


def test_regions_subcommand(capsys):
    code, out, _ = run(["regions", "--preset", "hyperbolic-n2", "--point", "3/2,3/2", "--length", "2"], capsys)
    verdicts, gens = out.split("\n\n")
    assert code == 0
    assert verdicts.splitlines()[1] == '"3/2,3/2",0,1,,0,1'
    assert "vertex,0,5" in gens and "vertex,-3,12" in gens


def test_char_subcommand(capsys):
    _, out, _ = run(["char", "--preset", "a2-n1", "--lam", "1,1", "--cap", "4"], capsys)
    assert "1,1,2,2" in out.splitlines()


def test_outputs_are_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "wmds.cli", "nseries", "--preset", "b2-n2", "--cap", "4", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
