import json

import pytest

from test_config import EQ21
from trinomial_pdde.cli import main

GOOD = "(2.531482381916797+1.4615520346484574*i)*exp(3.5*z3 + 1.5426609672270177*z2 + 2*z1)"
BAD = "(2.6+1.4615520346484574*i)*exp(3.5*z3 + 1.5426609672270177*z2 + 2*z1)"


@pytest.fixture
def eqfile(tmp_path):
    p = tmp_path / "eq.txt"
    p.write_text(EQ21)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_exit_codes(capsys, eqfile, tmp_path):
    code, out, _ = run(capsys, "verify", "--equation", eqfile, "--solution", GOOD, "--numeric")
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "verify", "--equation", eqfile, "--solution", BAD)
    assert code == 1 and out.startswith("FAIL")
    code, _, err = run(capsys, "verify", "--equation", eqfile, "--solution", "exp(z1")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "verify", "--equation", str(tmp_path / "missing"),
                       "--solution", GOOD)
    assert code == 2 and "cannot read" in err
    sol = tmp_path / "f.txt"
    sol.write_text(GOOD + "\n")
    code, _, _ = run(capsys, "verify", "--equation", eqfile, "--solution", str(sol))
    assert code == 0


def test_config_error_names_key(capsys, tmp_path):
    p = tmp_path / "eq.txt"
    p.write_text(EQ21.replace("c = [7, -2, -4]", "c = [0, 0, 0]"))
    code, _, err = run(capsys, "verify", "--equation", str(p), "--solution", "1")
    assert code == 2 and "c ∈ Cⁿ∖{0}" in err
    p.write_text(EQ21 + "extra = 1\n")
    code, _, err = run(capsys, "verify", "--equation", str(p), "--solution", "1")
    assert code == 2 and "'extra'" in err


def test_verify_json_is_deterministic(capsys, eqfile):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "--output", "json", "verify", "--equation", eqfile,
                           "--solution", GOOD, "--numeric", "--seed", "7")
        outs.append(out)
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert data["passed"] and data["seed"] == 7


def test_construct_and_check(capsys, eqfile, tmp_path):
    code, out, _ = run(capsys, "construct", "--equation", eqfile, "--theorem", "2.1",
                       "--case", "ii", "--solve-xi")
    assert code == 0 and "satisfied" in out
    params = tmp_path / "p.txt"
    params.write_text("L = [4, ln(6+6*sqrt(7)), 7]\nxi = 2\n")
    code, out, _ = run(capsys, "check-constraints", "--equation", eqfile, "--theorem", "2.1",
                       "--case", "ii", "--params", str(params))
    assert code == 1 and "NOT satisfied" in out
    code, out, _ = run(capsys, "solve-params", "--equation", eqfile, "--theorem", "2.1",
                       "--case", "ii")
    assert code == 0 and out.count("xi =") == 2
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--equation", eqfile, "--theorem", "2.1", "--case", "iv"])
    assert exc.value.code == 2


def test_examples_and_fuzz(capsys):
    code, out, _ = run(capsys, "examples", "--id", "2.1")
    assert code == 0 and "overall (constructed mode): PASS" in out
    code, _, _ = run(capsys, "examples", "--id", "2.1", "--mode", "verbatim")
    assert code == 1
    code, out, _ = run(capsys, "fuzz", "--trials", "2", "--theorem", "2.2", "--case", "iv")
    assert code == 0 and "0 violations" in out
