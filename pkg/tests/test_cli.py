import io
import json
import subprocess
import sys

import pytest

from qmzv import cli
from qmzv.cli import RunConfig, UsageError, main
from qmzv.relations import zeta_star_q
from qmzv.verify import SUITES
from qmzv.words import parse_wordsum


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_zeta_command():
    assert run("zeta", "[2]", "--precision", "5") == (0, "q + q^2 - q^3 + 2q^4 + O(q^5)\n")
    assert run("zeta", "[]", "--precision", "3") == (0, "1 + O(q^3)\n")
    assert run("zeta", "[3] - [2,1]", "--precision", "10") == (0, "O(q^10)\n")


def test_zeta_json():
    code, text = run("zeta", "[2]", "--precision", "5", "--output", "json")
    doc = json.loads(text)
    assert code == 0
    assert doc["coefficients"] == [0, 1, 1, -1, 2] and doc["valuation"] == 1


def test_zeta_star_flag():
    assert run("zeta", "[2,1]", "--star", "--precision", "6") == (
        0, str(zeta_star_q("[2,1]", 6)) + "\n")
    assert run("zeta", "[2,1]", "--star", "--precision", "30")[1] == run(
        "zeta", "[2,1] + [3] + h[2]", "--precision", "30")[1]


def test_zeta_errors(capsys):
    assert run("zeta", "[1]")[0] == 2
    assert "non-admissible argument" in capsys.readouterr().err
    assert run("zeta", "[2")[0] == 2
    assert run("zeta", "[2]", "--precision", "1")[0] == 2
    assert run("zeta")[0] == 2


def test_verify_command():
    code, text = run("verify", "duality", "--max-weight", "4")
    assert code == 0
    lines = text.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1] == "duality: 15/15 passed"
    code, text = run("verify", "products", "--max-weight", "3", "--max-n", "6")
    assert code == 0 and "FAIL" not in text


def test_verify_json_and_variant():
    code, text = run("verify", "hbar", "--max-weight", "3", "--output", "json")
    assert code == 0
    docs = [json.loads(line) for line in text.splitlines()]
    assert docs and all(d["pass"] for d in docs)
    code, text = run("verify", "hbar", "--max-weight", "4", "--circledast-variant", "bar")
    assert code == 1 and "FAIL hbar: (*)_q -> (*)" in text


def test_verify_unknown_suite(capsys):
    assert run("verify", "unknown-suite")[0] == 2
    err = capsys.readouterr().err
    for name in SUITES:
        assert name in err


@pytest.mark.parametrize("suite", ["star", "psi", "algebra", "relations", "truncation", "scalars"])
def test_verify_suites_pass(suite):
    assert run("verify", suite, "--max-weight", "3", "--max-n", "2", "--precision", "20")[0] == 0


def test_relations_command():
    code, text = run("relations", "--max-weight", "2", "--max-n", "1", "--precision", "30",
                     "--output", "json")
    assert code == 0
    (doc,) = [json.loads(line) for line in text.splitlines()]
    assert (doc["w1"], doc["w2"], doc["n"]) == ("[1]", "[1]", 1)
    assert doc["residual_valuation"] == "≥30"
    code, text = run("relations", "--max-weight", "3", "--max-n", "1")
    assert code == 0 and "zeta([3] - [2,1])" in text
    assert run("relations", "--max-weight", "1", "--max-n", "1") == (0, "")


def test_relations_exit_status_tracks_residuals(monkeypatch):
    real = cli.enumerate_relations

    def spoiled(*args, **kwargs):
        rels = real(*args, **kwargs)
        return rels[:-1] + [(rels[-1][0], 3)]

    monkeypatch.setattr(cli, "enumerate_relations", spoiled)
    code, text = run("relations", "--max-weight", "3", "--max-n", "1", "--precision", "10")
    assert code == 1 and text.splitlines()[-1].endswith("residual valuation 3")


def test_relations_output_round_trips():
    _, text = run("relations", "--max-weight", "3", "--max-n", "2", "--output", "json",
                  "--precision", "10")
    for line in text.splitlines():
        doc = json.loads(line)
        for part in doc["linear_arg"]:
            assert str(parse_wordsum(part["word"])) == part["word"]


def test_relations_deterministic_across_workers():
    args = ["relations", "--max-weight", "4", "--max-n", "2", "--precision", "15", "--output", "json"]
    a = run(*args)
    b = run(*args, "--workers", "3")
    assert a == b and a[0] == 0


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(precision=1)
    with pytest.raises(UsageError):
        RunConfig(max_weight=0)
    assert RunConfig().precision == 40


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qmzv", "zeta", "[2]", "--precision", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "q + q^2 - q^3 + 2q^4 + O(q^5)\n"
