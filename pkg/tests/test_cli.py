import json
import subprocess
import sys

import pytest

from superfat.cli import COMMANDS, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_example(capsys):
    code, out, _ = run(capsys, "check", "--vars", "x,y", "--ideal", "[x^3,y^3,x^2*y^2]", "--json")
    res = json.loads(out)["result"]
    assert code == 0
    assert (res["symmetric"], res["m"], res["length"], res["superfat"]) == (True, 3, 8, False)


def test_union_and_secant(capsys):
    code, out, _ = run(capsys, "union", "--m", "3", "--json")
    assert code == 0 and json.loads(out)["result"]["intersection_equals_fat"]
    code, out, _ = run(capsys, "secant", "--variety", "q2", "--d", "3", "--s", "2", "--seed", "7", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["dim"] == 11 and rep["seed"] == 7


def test_byte_identical_json(capsys):
    argv = ("hf-squares", "--s", "3", "--seed", "5", "--json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_exit_codes(capsys):
    code, _, err = run(capsys, "check", "--ideal", "[x^2, xy]")
    assert code == 1 and "column" in err
    code, _, err = run(capsys, "qq-monomial", "--point", "1,1,1,2", "--d", "4")
    assert code == 1
    code, _, _ = run(capsys, "secant", "--variety", "qq2", "--d", "3", "--s", "2", "--trials", "1")
    assert code == 0
    code, _, err = run(capsys, "sweep", "--kind", "union", "--range", "m=1..9")
    assert code == 1


def test_mismatch_exit_code(capsys, monkeypatch):
    from superfat import experiments

    monkeypatch.setitem(experiments.KNOWN_SECANTS, ("q2", 2), lambda d: 12)
    code, _, _ = run(capsys, "secant", "--variety", "q2", "--d", "3")
    assert code == 2


def test_trials_env(capsys, monkeypatch):
    monkeypatch.setenv("SUPERFAT_TRIALS", "2")
    code, out, _ = run(capsys, "secant", "--variety", "tau2", "--d", "4", "--s", "1", "--json")
    assert code == 0 and len(json.loads(out)["result"]["trial_dims"]) == 2


@pytest.mark.parametrize("argv", [
    ("length", "--ideal", "[x^2+y^2, x^3, x^2*y]", "--direction", "1,2"),
    ("hull", "--ideal", "[x^2, x*y, y^2]"),
    ("square-form", "--ideal", "[x*y, x^2-y^2]", "--field", "Qi"),
    ("hypercube", "--forms", "[x1, x1+x2]", "--m", "3"),
    ("smooth-family", "--m", "3", "--n", "2"),
    ("perp-union",),
    ("binomial", "--m", "1..10", "--i", "1..10"),
    ("perp", "--ideal", "[x0^2, x1^2]", "--degree", "4"),
    ("catalecticant", "--form", "x2^2*x0*x1", "--split", "2"),
    ("member", "--vars", "s0,s1;t0,t1", "--ideal", "[s1^2, t1^2]", "--degree", "3,3",
     "--form", "s0^2*s1*t0^2*t1"),
    ("tau2-normal", "--form", "x2^2*(x0^2 - x1^2)", "--ell", "x2", "--conic", "x0^2 - x1^2"),
    ("qq-monomial", "--point", "2,3,4,6", "--d", "5"),
    ("fill", "--d", "4"),
    ("quadric-check", "--d", "3", "--kind", "segre"),
    ("hf-squares", "--s", "2"),
    ("hf-superfat", "--m", "2", "--trials", "2"),
    ("sweep", "--kind", "secant", "--range", "variety=qq2", "--range", "d=2..3"),
])
def test_every_subcommand_succeeds(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0 and json.loads(out)["schema"] == 1


def test_help_names_statements():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    assert set(sub.choices) == {name for name, _, _ in COMMANDS}
    assert len(sub.choices) == 20
    for name, p in sub.choices.items():
        assert len(p.description) > 20


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "superfat", "binomial", "--m", "3", "--i", "3"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "ok: True" in out.stdout
