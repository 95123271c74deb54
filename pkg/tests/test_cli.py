import json
import subprocess
import sys

import pytest

from ielkit.cli import BUDGET, INPUT_ERROR, OK, REJECTED, dispatch


def run(*argv, stdin=None):
    return dispatch(list(argv), stdin)


def test_translate_example():
    out = run("translate", "--in", "~(K _|_)")
    assert out.code == OK and out.payload["translation"] == "[]~[]V[]_|_"


def test_prove_example():
    out = run("prove", "--system", "s4vg", "--goal", "=> ~[]V_|_", "--max-depth", "50")
    assert out.code == OK and out.payload["derivation"]["kind"] == "sequent"


def test_realize_iel_refuted():
    out = run("realize-iel", "--system", "iel", "--in", "Kp -> p")
    assert out.code == REJECTED and out.payload["outcome"] == "saturated-unprovable"


def test_budget_exit_code():
    out = run("prove", "--system", "s4vg", "--in", "[]([]V[]p -> []p)", "--max-nodes", "3")
    assert out.code == BUDGET and out.payload["outcome"] == "budget-exhausted"


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["translate", "--in", "[]p"],
        ["parse", "--in", "p &"],
        ["check", "--kind", "sequent", "--in", "not json"],
        ["check", "--kind", "hilbert", "--in", "{}"],
        ["prove", "--wat"],
    ],
)
def test_input_errors(argv):
    out = run(*argv)
    assert out.code == INPUT_ERROR and "error" in out.payload


def test_parse_and_project():
    out = run("parse", "--in", "(x + !y):(p & ~q)")
    assert out.payload == {"formula": "(x + !y):(p & ~q)", "language": "explicit"}
    out = run("project", "--in", "~t:V _|_")
    assert out.payload["projection"] == "~[]V_|_"


def test_stdin_input():
    assert run("translate", stdin="K p").payload["translation"] == "[]V[]p"


def test_pipes_compose(tmp_path):
    proved = run("prove", "--system", "s4vminus_g", "--goal", "[]p, [](p -> q) => V q")
    assert proved.code == OK
    checked = run("check", "--kind", "sequent", stdin=json.dumps(proved.payload))
    assert checked.code == OK and checked.payload["accepted"]

    realized = run("realize", stdin=json.dumps(proved.payload))
    assert realized.code == OK
    verdict = run("check", "--kind", "hilbert", "--system", "lpvminus", stdin=json.dumps(realized.payload))
    assert verdict.code == OK and verdict.payload["accepted"]

    full = run("realize-iel", "--system", "iel", "--in", "~K _|_")
    path = tmp_path / "witness.json"
    path.write_text(json.dumps(full.payload))
    verdict = run("check", "--kind", "hilbert", "--system", "lpv", "--file", str(path))
    assert verdict.code == OK


def test_tampered_documents_are_rejected():
    proved = run("prove", "--system", "s4vg", "--goal", "=> ~[]V_|_").payload
    proved["derivation"]["nodes"][0]["rule"] = "ax-atom"
    assert run("check", "--kind", "sequent", stdin=json.dumps(proved)).code == REJECTED
    wit = run("realize-iel", "--system", "iel-", "--in", "p -> K p").payload["witness"]
    wit["lines"][0]["formula"] = "q"
    assert run("check", "--kind", "hilbert", stdin=json.dumps(wit)).code == REJECTED


def test_cs_flag(tmp_path):
    cs = tmp_path / "cs.json"
    cs.write_text(json.dumps({"cs": [{"constant": "c", "formula": "p -> q -> p"}]}))
    doc = {
        "kind": "hilbert",
        "lines": [{"index": 1, "justification": {"rule": "cs", "constant": "c"}, "formula": "c:(p -> q -> p)"}],
    }
    argv = ["check", "--kind", "hilbert", "--system", "lpv", "--mode", "cs", "--in", json.dumps(doc)]
    assert run(*argv).code == REJECTED
    assert run(*argv, "--cs", str(cs)).code == OK


def test_deterministic_payloads():
    a = run("realize-iel", "--system", "iel-", "--in", "K p -> K K p", "--seed", "3")
    b = run("realize-iel", "--system", "iel-", "--in", "K p -> K K p", "--seed", "3")
    assert json.dumps(a.payload) == json.dumps(b.payload)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ielkit.cli", "translate", "--in", "~K _|_"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["translation"] == "[]~[]V[]_|_"
    proc = subprocess.run([sys.executable, "-m", "ielkit.cli", "translate", "--in", "~K _|_", "--pretty"],
                          capture_output=True, text=True)
    assert "translation: []~[]V[]_|_" in proc.stdout
