import subprocess
import sys

import pytest

from stopred import codes, construct
from stopred.cli import main

TABLE5 = """tau,l4,l5,l6,l7,l8
1,24,36,61,105,180
2,24,36,59,103,177
3,25,35,58,102,175
4,25,34,57,100,174
5,26,33,56,99,172
6,27,33,56,98,171
7,28,33,55,98,170
8,29,33,55,97,169
9,30,33,55,96,168
10,31,33,55,96,167
11,32,34,55,96,167
12,33,35,56,97,168
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound_cor2(capsys):
    assert run(capsys, "bound", "--code", "golay24", "--method", "cor2") == (0, "177\n", "")


def test_bound_verbose_goes_to_stderr(capsys):
    code, out, err = run(capsys, "bound", "--code", "golay24", "--method", "tau0", "-v")
    assert out == "182\n" and "kappa=" in err


def test_tables_5_csv(capsys):
    code, out, _ = run(capsys, "--threads", "3", "tables", "--which", "5", "--format", "csv")
    assert code == 0 and out == TABLE5


def test_tables_are_deterministic(capsys):
    first = run(capsys, "tables", "--which", "3", "--format", "markdown")[1]
    second = run(capsys, "--threads", "1", "tables", "--which", "3", "--format", "markdown")[1]
    assert first == second and first.startswith("| l | value |")


def test_tables_3_csv_schema(capsys):
    out = run(capsys, "tables", "--which", "3")[1]
    assert out.splitlines() == ["l,value", "4,25", "5,36", "6,59", "7,103", "8,177"]
    out = run(capsys, "tables", "--which", "3", "--with-baseline")[1]
    assert out.splitlines()[0] == "l,value,baseline" and out.splitlines()[-1] == "8,177,2509"


def test_hierarchy_range(capsys):
    code, out, err = run(capsys, "hierarchy", "--code", "golay24", "--l", "6-8")
    assert out == "6 59\n7 103\n8 177\n"
    assert "conditional variant unavailable" in err


def test_hybrid(capsys):
    assert run(capsys, "hybrid", "--code", "golay24", "--tau", "7", "--l", "6")[1] == "55\n"


def test_info(capsys):
    out = run(capsys, "info", "golay24")[1]
    assert out.splitlines() == ["n=24", "k=12", "d=8", "r=12", "d_perp=8", "min_weight_dual_count=759"]


def test_info_from_file(capsys, tmp_path, golay):
    path = tmp_path / "golay.alist"
    path.write_text(codes.save_alist(golay.H))
    out = run(capsys, "info", str(path))[1]
    assert "d=8" in out and "min_weight_dual_count=759" in out


def test_stopdist_identity(capsys, tmp_path):
    path = tmp_path / "identity12.txt"
    path.write_text("\n".join("".join("1" if i == j else "0" for j in range(12)) for i in range(12)))
    code, out, _ = run(capsys, "stopdist", "--matrix", str(path), "--limit", "12")
    assert (code, out) == (0, "≥13\n")


def test_stopdist_exact_with_witness(capsys, tmp_path, golay):
    path = tmp_path / "golay.txt"
    path.write_text(codes.save_plain(golay.H))
    code, out, err = run(capsys, "stopdist", "--matrix", str(path))
    assert out == "4\n" and err.startswith("stopping set:")


def test_construct_round_trip(capsys, tmp_path, golay):
    path = tmp_path / "out.alist"
    code, out, _ = run(capsys, "construct", "--code", "golay24", "--l", "6", "--strategy", "max_coverage",
                       "--seed", "1", "--out", str(path))
    assert code == 0 and "stopping_distance=≥6" in out
    M = codes.load_alist(path.read_text())
    assert construct.verify(M, golay, 6).passed


def test_construct_randomized_plain(capsys, tmp_path, golay):
    path = tmp_path / "out.txt"
    code, out, _ = run(capsys, "construct", "--code", "golay24", "--l", "5", "--strategy", "randomized",
                       "--seed", "4", "--t", "13", "--out", str(path))
    assert code == 0 and "delta_after_step1=" in out
    assert construct.verify(codes.load_plain(path.read_text()), golay, 5).passed


def test_domain_error_exit_1(capsys):
    code, out, err = run(capsys, "hybrid", "--code", "golay24", "--tau", "3", "--l", "9")
    assert code == 1 and out == "" and "l must lie" in err


def test_parse_error_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("10\n1\n")
    code, _, err = run(capsys, "stopdist", "--matrix", str(path))
    assert code == 2 and "ragged" in err


def test_missing_file_exit_2(capsys, tmp_path):
    assert run(capsys, "stopdist", "--matrix", str(tmp_path / "nope.txt"))[0] == 2


def test_budget_env_exit_1(capsys, tmp_path, monkeypatch, golay):
    path = tmp_path / "golay.txt"
    path.write_text(codes.save_plain(golay.H))
    monkeypatch.setenv("STOPRED_BUDGET", "100")
    code, _, err = run(capsys, "stopdist", "--matrix", str(path))
    assert code == 1 and "budget" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stopred", "bound", "--code", "golay24", "--method", "cor1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "180\n"
