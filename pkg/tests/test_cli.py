import csv
import io
import math
import subprocess
import sys

import pytest

from orbitkit.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_limit_sqrt2(capsys):
    code, out, _ = call(capsys, "limit", "--spec", "sqrt_affine(c=2)", "--t0", "0")
    assert code == 0
    assert "2.46740110" in out and "+/-" in out and "exact-formula" in out


def test_mobius_limit_continued_fraction(capsys):
    code, out, _ = call(capsys, "mobius-limit", "--spec", "mobius(a=2,b=15,d=0)", "--t0", "2")
    assert code == 0
    assert "24/5 = 4.8" in out and "exact-formula" in out


def test_phi_series_csv(capsys):
    code, out, _ = call(capsys, "phi-series", "--c", "6", "--terms", "6")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "numerator", "denominator", "decimal"]
    assert len(rows) == 7
    assert rows[-1][:3] == ["5", "97", "31573395000"]


def test_orbit_and_candidate_csv(capsys):
    code, out, _ = call(capsys, "orbit", "--spec", "sqrt_affine(c=2)", "--t0", "0", "--n", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["n", "t_n"] and len(rows) == 5
    assert float(rows[3][1]) == pytest.approx(math.sqrt(2 + math.sqrt(2)))
    code, out, _ = call(capsys, "candidate", "--spec", "sqrt_affine(c=2)", "--t0", "0", "--n", "5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["n", "c_n"] and float(rows[1][1]) == 2.0


def test_q_construct_forms(capsys):
    code, out, _ = call(capsys, "q-construct", "--l", "2", "--m", "1/6", "--s", "-1/18")
    assert code == 0 and "a = 3" in out and "b = 6" in out and "d = 4" in out
    code2, out2, _ = call(capsys, "q-construct", "--l", "2", "--m", "1/6", "--s=-1/18")
    assert code2 == 0 and out2 == out
    code, out, _ = call(capsys, "q-construct", "--spec", "sqrt_affine(c=2)", "--gap", "1")
    assert code == 0 and "discriminant" in out


def test_other_verbs(capsys):
    assert call(capsys, "phi-error", "--c", "6", "--terms", "5")[0] == 0
    code, out, _ = call(capsys, "cheby", "--k", "5", "--t0", "0", "--n", "8")
    assert code == 0 and "16t^5 - 20t^3 + 5t" in out
    code, out, _ = call(capsys, "currie-c", "--l", "2")
    assert code == 0 and "3.14159265358979" in out
    code, out, _ = call(capsys, "koenigs-check", "--l", "2")
    assert code == 0 and "pass" in out
    code, out, _ = call(capsys, "verify-rootlike", "--spec", "sqrt_affine(c=2)", "--lo", "-1", "--hi", "10")
    assert code == 0 and "root-like: True" in out
    code, out, _ = call(capsys, "verify-rootlike", "--spec", "quartic_demo()", "--lo", "0.5", "--hi", "1.5")
    assert code == 1 and "root-like: False" in out


def test_exit_codes(capsys):
    assert call(capsys, "bogus")[0] == 2
    assert call(capsys, "limit", "--spec", "nope(c=1)", "--t0", "0")[0] == 2
    assert call(capsys, "limit", "--spec", "sqrt_affine(c=2)")[0] == 2
    assert call(capsys, "limit", "--spec", "sqrt_affine(c=2)", "--t0", "0", "--precision", "quad")[0] == 2
    code, _, err = call(capsys, "limit", "--spec", "sqrt_affine(c=2)", "--t0", "-5")
    assert code == 3 and "domain" in err
    code, _, err = call(capsys, "limit", "--spec", "sqrt_affine(c=2)", "--t0", "2")
    assert code == 4 and err
    code, out, _ = call(capsys, "phi-error", "--c", "6", "--terms", "5", "--target", "1000")
    assert code == 0 and "no root" in out


def test_config_file_and_flag_precedence(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# nested radicals\nspec = sqrt_affine(c=2)\nt0 = 0  # start\nn = 2\nformat = csv\n")
    code, out, _ = call(capsys, "orbit", "--config", str(conf))
    assert code == 0 and len(out.strip().splitlines()) == 4
    code, out, _ = call(capsys, "orbit", "--config", str(conf), "--n", "4")
    assert code == 0 and len(out.strip().splitlines()) == 6
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n")
    assert call(capsys, "orbit", "--config", str(bad))[0] == 2


def test_out_path(tmp_path, capsys):
    target = tmp_path / "series.csv"
    code, out, _ = call(capsys, "phi-series", "--c", "2", "--terms", "4", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("n,numerator,denominator,decimal\n")


def test_output_is_deterministic(capsys):
    a = call(capsys, "limit", "--spec", "kth_root(l=3,k=3)", "--t0", "0")
    b = call(capsys, "limit", "--spec", "kth_root(l=3,k=3)", "--t0", "0")
    assert a == b


def test_module_entry_point_repro():
    proc = subprocess.run([sys.executable, "-m", "orbitkit", "repro"], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "13/13 passed" in proc.stdout
