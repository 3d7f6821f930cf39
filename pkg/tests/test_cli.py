import json
import subprocess
import sys

import pytest

from qf.cli import build_parser, main
from qf.quantale import find_quantale_isomorphism
from qf.saturation import saturate
from qf.serialize import load_json, quantale_from_json

from conftest import PRESENTATIONS, pres

Q1, Q2, Q3 = (str(PRESENTATIONS / f"{n}.qpres") for n in ("q1", "q2", "q3"))
VERBS = [
    "build", "show", "check", "primes", "reflect", "coexp", "tangent", "ring", "idl", "rad", "principal",
    "homs-to-d", "valuations", "localise", "crosscheck-locally-principal", "prevaluations", "conjecture",
]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_round_trips(tmp_path, capsys, cli_env):
    target = tmp_path / "q2.json"
    code, _, _ = run(capsys, "build", Q2, "--truncate", "--out", str(target))
    assert code == 0
    Q = quantale_from_json(load_json(str(target)))
    assert find_quantale_isomorphism(Q, saturate(pres("q2"), truncate=True).quantale) is not None
    assert not list(tmp_path.glob(".qf-*"))


def test_build_of_infinite_presentation_fails(capsys, cli_env):
    code, out, err = run(capsys, "build", Q2)
    assert code == 1 and out == ""
    assert err.startswith("CapExceeded:")


def test_degree_cap_environment(capsys, monkeypatch):
    monkeypatch.setenv("QF_DEGREE_CAP", "2")
    code, out, _ = run(capsys, "show", Q1, "--truncate")
    assert code == 0 and json.loads(out)["size"] == 4


def test_tangent_verdict(capsys, cli_env):
    code, out, _ = run(capsys, "tangent", Q2)
    assert code == 0
    report = json.loads(out)
    assert report["nonsingular"] is False
    assert report["partial"] == {"x": "x1", "y": "x1"}


def test_idl_dot(capsys):
    code, out, _ = run(capsys, "idl", "--ring", "zmod 6", "--dot")
    assert code == 0
    assert out.count("label=") == 4
    assert out.count("->") == 4
    assert "{ rank=same; n1; n2; }" in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    assert "UsageError" in capsys.readouterr().err
    assert run(capsys, "primes")[0] == 2
    assert run(capsys, "show", "/no/such/file.json")[0] == 2
    assert run(capsys, "localise", "--ring", "zmod 6", "--element", "7")[0] == 2


def test_domain_errors_name_the_error(tmp_path, capsys):
    bad = tmp_path / "bad.qpres"
    bad.write_text("gens x\nrel x * = x\n")
    code, _, err = run(capsys, "build", str(bad))
    assert code == 1 and err.startswith("SyntaxError:") and "line 2" in err
    js = tmp_path / "bad.json"
    js.write_text('{"elements": ["0"], "leq": [[0, 0]], "mult": [[0, 0]], "unit": 0}')
    code, _, err = run(capsys, "check", str(js))
    assert code == 1 and err.startswith("SchemaError:")
    code, _, err = run(capsys, "localise", "--ring", "zmod 6", "--element", "0", "--element", "2")
    assert code == 0


def test_every_verb_documents_errors():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "verb")
    assert sorted(sub.choices) == sorted(VERBS)
    for name, p in sub.choices.items():
        assert "errors:" in p.format_help(), name


def test_verbs_smoke(capsys, tmp_path):
    cases = [
        ["show", Q3],
        ["check", Q3],
        ["primes", "--ring", "zmod 12"],
        ["reflect", "--ring", "zmod 4"],
        ["reflect", Q3, "--two-sided"],
        ["coexp", Q1, "--over", "S"],
        ["coexp", Q2, "--over", "D", "--localic", "--dot"],
        ["ring", "--ring", "poly 2 1 1 1"],
        ["rad", "--ring", "zmod 12"],
        ["principal", "--ring", "mono 2 x,y x^2 x*y y^2"],
        ["homs-to-d", "--ring", "zmod 4"],
        ["valuations", "--ring", "zmod 4", "--height", "1"],
        ["localise", "--ring", "zmod 12", "--element", "3"],
        ["crosscheck-locally-principal", "--ring", "zmod 8"],
        ["prevaluations", "--ring", "zmod 4", "--height", "1"],
        ["conjecture", "--max-order", "4"],
    ]
    for argv in cases:
        code, out, err = run(capsys, *argv)
        assert code == 0, (argv, err)
        assert out


def test_cli_outputs(capsys):
    _, out, _ = run(capsys, "homs-to-d", "--ring", "zmod 4")
    doc = json.loads(out)
    assert len(doc["homs"]) == 2 and doc["match"] is True
    _, out, _ = run(capsys, "prevaluations", "--ring", "zmod 4", "--height", "1")
    doc = json.loads(out)
    assert doc["valuations"] == 2 and doc["bijective"] is True
    _, out, _ = run(capsys, "localise", "--ring", "zmod 6", "--element", "3")
    doc = json.loads(out)
    assert len(doc["ring"]["elements"]) == 2 and doc["ideals_match"] and doc["order_check"]
    _, out, _ = run(capsys, "principal", "--ring", "mono 2 x,y x^2 x*y y^2")
    flags = {row["element"]: row["principal"] for row in json.loads(out)}
    assert flags["(x,y)"] is False and flags["(x)"] is True


def test_outputs_are_byte_identical():
    def once(*argv):
        return subprocess.run([sys.executable, "-m", "qf", *argv], capture_output=True, check=True).stdout

    for argv in (["tangent", Q2], ["idl", "--ring", "zmod 12", "--dot"], ["build", Q2, "--truncate"]):
        assert once(*argv) == once(*argv)
