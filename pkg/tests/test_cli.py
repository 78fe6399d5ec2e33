import json
import subprocess
import sys

import pytest

from deepvote.cli import main

KENDALL_CSV = "cand,v1,v2,v3,v4,v5\nc1,1,1,1,3,2\nc2,2,2,2,2,1\nc3,3,3,3,1,3\n"


@pytest.fixture
def table(tmp_path):
    path = tmp_path / "profile.csv"
    path.write_text(KENDALL_CSV)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_winner(capsys, table):
    assert run(capsys, "winner", table) == (0, "c1\n", "")
    assert run(capsys, "winner", table, "--p", "2")[1] == "c2\n"
    assert run(capsys, "winner", table, "--distance", "minkowski", "--q", "inf")[1] == "c1\n"


def test_deepest_json(capsys, table):
    code, out, _ = run(capsys, "deepest", table, "--p", "2")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["results"][0]["deepest_set"] == [[2, 1, 3]]


def test_weights_presets(capsys, tmp_path):
    prof = tmp_path / "p.txt"
    prof.write_text("3: A>B>C\n2: B>C>A\n2: C>B>A\n")
    assert run(capsys, "winner", str(prof), "--distance", "hamming", "--weights", "plurality")[1] == "A\n"
    code, out, _ = run(capsys, "deepest", str(prof), "--distance", "hamming", "--weights", "antiplurality")
    assert json.loads(out)["results"][0]["distance"] == "weighted_hamming"
    w = tmp_path / "w.csv"
    w.write_text("1,1,1\n1,1,1\n1,1,1\n")
    assert run(capsys, "winner", str(prof), "--distance", "hamming", "--weights", str(w))[0] == 0


def test_compare_exit_codes(capsys, table):
    code, out, _ = run(capsys, "compare", table, "--rule", "kemeny")
    assert code == 0 and "agree" in out
    code, out, _ = run(capsys, "compare", table, "--rule", "kemeny", "--p", "2")
    assert code == 1 and "differ" in out
    code, out, _ = run(capsys, "compare", table, "--rule", "borda", "--format", "json")
    assert json.loads(out)["agree"] is True


def test_axioms_exit_codes(capsys):
    code, out, _ = run(capsys, "axioms", "--axiom", "monotonicity", "--distance", "hamming", "--trials", "200")
    assert code == 1 and json.loads(out)["results"][0]["status"] == "violated"
    code, out, _ = run(capsys, "axioms", "--axiom", "condorcet_winner", "--distance", "kendall", "--trials", "50")
    assert code == 0
    code, _, _ = run(capsys, "axioms", "--axiom", "neutrality", "--rule", "borda", "--trials", "20")
    assert code == 0


def test_gen_is_seeded(capsys):
    a = run(capsys, "gen", "--m", "4", "--n", "6", "--seed", "3")[1]
    b = run(capsys, "gen", "--m", "4", "--n", "6", "--seed", "3")[1]
    assert a == b and a.startswith("candidate,v1")
    orders = run(capsys, "gen", "--m", "3", "--n", "4", "--output-format", "orders")[1]
    assert ":" in orders


def test_input_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,1,1\nb,2,1\n")
    code, _, err = run(capsys, "winner", str(bad))
    assert code == 2 and "error" in err
    assert run(capsys, "winner", str(tmp_path / "missing.csv"))[0] == 2
    zero = tmp_path / "zero.txt"
    zero.write_text("0: A>B\n")
    assert run(capsys, "winner", str(zero))[0] == 2
    assert run(capsys, "winner", str(zero.with_name("x")), "--distance", "minkowski", "--q", "0.5")[0] == 2


def test_bad_flags_exit_2(table):
    with pytest.raises(SystemExit) as info:
        main(["winner", table, "--distance", "ulam"])
    assert info.value.code == 2


def test_stdin_and_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "deepvote.cli", "winner", "-"],
        input="2: A>B>C\n1: C>A>B\n",
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "A\n"
