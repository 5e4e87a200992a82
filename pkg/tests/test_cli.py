import io
import json
import subprocess
import sys

import pytest

from causalupd.cli import EXIT_NONE, EXIT_OK, EXIT_USAGE, main

from conftest import DATA


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_text(capsys):
    code, out, _ = run(capsys, "solve", DATA / "tv1.lp", DATA / "tv2.lp")
    assert code == EXIT_OK
    assert out == "answer set 1: {-tv_on, night, power_failure, sleep}\n"


def test_solve_show_rejected(capsys):
    code, out, _ = run(capsys, "solve", "--show-rejected", DATA / "tv1.lp", DATA / "tv2.lp")
    assert "  rejected r1.2: tv_on." in out.splitlines()


def test_solve_structured(capsys):
    code, out, _ = run(capsys, "solve", "--format=structured", "--semantics=strict", DATA / "concert.lp")
    data = json.loads(out)
    assert data == [{"literals": ["-concert_saturday", "-final_rehearsal_friday", "concert_friday"],
                     "rejected": [{"layer": 1, "position": 0, "rule": "-concert_friday."}]}]


@pytest.mark.parametrize("method", ["direct", "testprogram"])
def test_minimal_methods(capsys, method):
    code, out, _ = run(capsys, "solve", "--semantics=minimal", f"--method={method}", DATA / "concert.lp")
    assert code == EXIT_OK and out.count("answer set") == 2


def test_dynamic_and_inheritance(capsys):
    code, out, _ = run(capsys, "solve", "--mode=glp", "--semantics=dynamic", DATA / "rain.glp")
    assert out == "answer set 1: {it_is_raining}\n"
    code, out, _ = run(capsys, "solve", "--semantics=dynamic", DATA / "rain_elp.lp")
    assert out == "answer set 1: {it_is_raining}\n"
    code, out, _ = run(capsys, "solve", "--semantics=inheritance", DATA / "tv1.lp", DATA / "tv2.lp")
    assert out == "answer set 1: {-tv_on, night, power_failure, sleep}\n"


def test_justified_needs_state(capsys):
    code, _, err = run(capsys, "solve", "--semantics=justified", DATA / "concert.lp")
    assert code == EXIT_USAGE and "--state" in err
    code, out, _ = run(capsys, "solve", "--semantics=justified", "--state=3", DATA / "concert.lp")
    assert code == EXIT_OK and out.count("answer set") == 3


def test_exit_codes(capsys):
    assert run(capsys, "solve", DATA / "contradiction.lp")[:2] == (EXIT_NONE, "no answer set\n")
    code, out, err = run(capsys, "solve", DATA / "malformed.lp")
    assert code == EXIT_USAGE and out == "" and "line 2" in err
    assert run(capsys, "solve", DATA / "missing.lp")[0] == EXIT_USAGE
    assert run(capsys, "solve", "--semantics=bogus", DATA / "tv1.lp")[0] == EXIT_USAGE
    assert run(capsys, "solve", DATA / "empty.lp")[:2] == (EXIT_OK, "answer set 1: {}\n")


def test_atom_cap(capsys):
    code, _, err = run(capsys, "solve", "--atom-cap=1", DATA / "concert.lp")
    assert code == EXIT_USAGE and "atom cap of 1" in err


def test_transform(capsys):
    code, out, _ = run(capsys, "transform", DATA / "tv1.lp", DATA / "tv2.lp")
    assert code == EXIT_OK
    assert "lv1_sleep :- not tv_on, not rej_1_0." in out
    code, out, _ = run(capsys, "transform", "--mode=glp", "--target=q", DATA / "rain.glp")
    assert "-it_is_raining :- not it_is_raining." in out


def test_compare_and_graph_check(capsys):
    code, out, _ = run(capsys, "compare", DATA / "rain_elp.lp")
    assert out.splitlines() == ["{-it_is_raining}  update: yes  dynamic: no",
                                "{it_is_raining}  update: yes  dynamic: yes"]
    code, out, _ = run(capsys, "graph-check", "--mode=glp", DATA / "tv.glp")
    assert code == EXIT_OK and "static certificate: holds" in out
    code, out, _ = run(capsys, "graph-check", "--mode=glp", "--format=structured", DATA / "tv.glp")
    assert json.loads(out)["level"] == "glp"


def test_postulates_command(capsys):
    code, out, _ = run(capsys, "postulates", "run", "--id", "K1", "--random", "5")
    assert code == EXIT_OK and "K1" in out
    code, out, _ = run(capsys, "postulates", "run", "--id", "U6", "--random", "0")
    assert code == EXIT_NONE and "<-- differs" in out


def test_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("a :- not b.\n"))
    code, out, _ = run(capsys, "solve", "-")
    assert out == "answer set 1: {a}\n"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "causalupd", "solve", str(DATA / "tv1.lp")],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout == "answer set 1: {night, tv_on, watch_tv}\n"
