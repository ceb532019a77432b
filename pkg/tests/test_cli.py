import json
import subprocess
import sys

import pytest

from halperin.cli import main
from halperin.kmatrix import ChargeVector, KMatrix, Solution, verify_solution
from fractions import Fraction


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_csv_golden_row(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--nu", "2/3", "--t", "1,1", "--max", "200")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "m,n,l,det"
    assert "2,6,3,3" in lines


def test_enumerate_empty_exit_code(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate", "--nu", "9/10", "--t", "1,1", "--max", "50", "--fix-l", "0"
    )
    assert code == 1
    assert out.strip() == "m,n,l,det"


def test_enumerate_includes_unit_filling_row(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--nu", "1/1", "--t", "1,1", "--max", "10")
    assert code == 0
    assert "2,5,3,1" in out.strip().splitlines()


def test_enumerate_json_schema(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate", "--nu", "2/3", "--t", "1,1", "--max", "20", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["nu"] == "2/3"
    assert payload["t"] == [1, 1]
    assert {"m": 2, "n": 6, "l": 3, "det": 3} in payload["solutions"]


def test_enumerate_unreduced_fraction_warns(capsys):
    code, out, err = run_cli(capsys, "enumerate", "--nu", "4/6", "--t", "1,1", "--max", "20")
    assert code == 0
    assert "lowest terms" in err
    assert "2,6,3,3" in out


def test_enumerate_rows_reverify(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate", "--nu", "13/17", "--t", "1,1", "--max", "80", "--verify"
    )
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        m, n, l, det = map(int, line.split(","))
        sol = Solution(KMatrix(m, n, l), det, Fraction(13, 17), ChargeVector(1, 1))
        assert verify_solution(sol)


def test_construct_t11_family(capsys):
    code, out, _ = run_cli(
        capsys, "construct", "--nu", "3/5", "--t", "1,1", "--min-det", "0", "--family", "t11"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["solutions"] == [{"m": 7, "n": 2, "l": 3, "det": 5}]
    assert payload["trace"]["a"] == 4
    assert payload["trace"]["b"] == 1
    assert payload["trace"]["t"] == 1


def test_construct_min_det(capsys):
    code, out, _ = run_cli(
        capsys, "construct", "--nu", "13/17", "--t", "1,1", "--min-det", "1000000"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["solutions"][0]["det"] == 1002252


def test_construct_bosonic(capsys):
    code, out, _ = run_cli(
        capsys, "construct", "--nu", "3/5", "--t", "1,0", "--bosonic", "--alpha", "2"
    )
    assert code == 0
    payload = json.loads(out)
    row = payload["solutions"][0]
    assert (row["m"], row["n"], row["l"], row["det"]) == (10, 300, 50, 500)
    assert all(row[key] % 2 == 0 for key in ("m", "n", "l"))


def test_construct_family_charge_mismatch(capsys):
    code, _, err = run_cli(
        capsys, "construct", "--nu", "3/5", "--t", "1,1", "--family", "t10"
    )
    assert code == 2
    assert "t10" in err


def test_fixed_l_empty(capsys):
    code, out, _ = run_cli(capsys, "fixed-l", "--nu", "3/4", "--t", "1,1", "--l", "1")
    assert code == 1
    assert json.loads(out)["outcome"] == "empty"


def test_fixed_l_finite_rows(capsys):
    code, out, _ = run_cli(capsys, "fixed-l", "--nu", "2/3", "--t", "1,1", "--l", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["outcome"] == "finite"
    assert len(payload["solutions"]) == 2


def test_fixed_l_infinite_family(capsys):
    code, out, _ = run_cli(capsys, "fixed-l", "--nu", "1/1", "--t", "1,1", "--l", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["outcome"] == "infinite_family"
    assert "(m, 1, 1)" in payload["family"]


def test_bound_report(capsys):
    code, out, _ = run_cli(capsys, "bound", "--t", "1,1", "--l", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["certified_bound"] == "4/1"
    assert payload["empirical_max"] == "2/1"


def test_classify_report(capsys):
    code, out, _ = run_cli(capsys, "classify", "--k", "2,6,3")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"m": 2, "n": 6, "l": 3, "det": 3, "valid": True, "parity": "bosonic"}


def test_residue_report(capsys):
    code, out, _ = run_cli(capsys, "residue", "--target", "3", "--mod", "5")
    assert code == 1  # no witness exists
    payload = json.loads(out)
    assert payload["witness"] is None
    assert payload["legendre"] == -1
    code, out, _ = run_cli(capsys, "residue", "--target", "4", "--mod", "12")
    assert code == 0
    payload = json.loads(out)
    assert payload["witness"] == 2
    assert payload["legendre"] is None  # composite modulus


def test_triples_report(capsys):
    code, out, _ = run_cli(capsys, "triples", "--m", "2", "--n", "1", "--k", "1")
    assert code == 0
    assert json.loads(out) == {"a": 3, "b": 4, "c": 5, "primitive": True}


def test_modcheck_reports(capsys):
    code, out, _ = run_cli(capsys, "modcheck", "--eq", "3x^2+2=y^2", "--mod", "3")
    assert code == 1
    assert json.loads(out)["solvable"] is False
    code, out, _ = run_cli(capsys, "modcheck", "--eq", "3x^2-7y^2-17z^2=0", "--mod", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["solvable"] is True
    assert payload["witness"] is not None


def test_output_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = run_cli(
        capsys, "enumerate", "--nu", "2/3", "--t", "1,1", "--max", "30", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    content = target.read_text().strip().splitlines()
    assert content[0] == "m,n,l,det"
    assert "2,6,3,3" in content


def test_table_format(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate", "--nu", "2/3", "--t", "1,1", "--max", "10", "--format", "table"
    )
    assert code == 0
    header = out.splitlines()[0].split()
    assert header == ["m", "n", "l", "det"]


def test_output_is_deterministic(capsys):
    args = ["enumerate", "--nu", "16/17", "--t", "1,1", "--max", "120"]
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second
    _, parallel, _ = run_cli(capsys, *args, "--workers", "3")
    assert first == parallel


def test_usage_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "enumerate", "--nu", "2/3", "--t", "1,1")
    assert code == 2
    assert "max" in err


def test_invalid_flag_values_exit_2():
    # argparse reports bad type conversions as usage errors (exit 2)
    for argv in (
        ["enumerate", "--nu", "0/3", "--t", "1,1", "--max", "10"],
        ["enumerate", "--nu", "2/3", "--t", "0,0", "--max", "10"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    # values validated after parsing come back as return code 2
    assert main(["modcheck", "--eq", "x^4=y^2", "--mod", "3"]) == 2


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "halperin.cli", "triples", "--m", "2", "--n", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["c"] == 5
