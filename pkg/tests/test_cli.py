import io
import json
import subprocess
import sys

import pytest

from minbrace import canonical_form, format_graph, make, parse_graph
from minbrace.cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, stdout=out)
    return code, out.getvalue()


@pytest.fixture
def graph_file(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.txt"
        p.write_text(format_graph(make(name)))
        return str(p)
    return write


def test_check_k33(graph_file):
    code, out = run(["check", graph_file("K33")])
    assert code == EXIT_OK
    assert out.strip() == "matching_covered=true brace=true minimal=true mccuaig=true"


def test_check_reads_stdin(monkeypatch):
    code, out = run(["check"], stdin=format_graph(make("Q10")), monkeypatch=monkeypatch)
    assert code == EXIT_OK
    assert out.strip() == "matching_covered=true brace=false minimal=false mccuaig=false"


def test_check_json(graph_file):
    code, out = run(["check", "--json", graph_file("Q10plus")])
    assert json.loads(out) == {"matching_covered": True, "brace": True, "minimal": True, "mccuaig": False}


def test_decompose_q10(graph_file):
    code, out = run(["decompose", graph_file("Q10")])
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    k33 = canonical_form(make("K33")).hex()
    assert len(lines) == 2
    assert all(line.split()[0] == k33 for line in lines)
    assert all("order=6" in line for line in lines)


def test_decompose_needs_matching_covered(monkeypatch):
    code, _ = run(["decompose"], stdin="bipartite 2 2\n0 0\n0 1\n1 1\n", monkeypatch=monkeypatch)
    assert code == EXIT_USAGE


def test_classify_edges(graph_file):
    code, out = run(["classify-edges", "--json", graph_file("Q10plus")])
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == EXIT_OK and len(recs) == 16
    assert sum(r["strictly_thin"] for r in recs) > 0
    assert not any(r["superfluous"] for r in recs)


def test_classify_text(graph_file):
    code, out = run(["classify-edges", graph_file("B8plus")])
    lines = out.strip().splitlines()
    assert len(lines) == 13
    assert sum("superfluous=true" in line for line in lines) == 1


def test_generate_round_trip():
    code, out = run(["generate", "--family", "biwheel", "--order", "12"])
    assert code == EXIT_OK
    G = parse_graph(out)
    assert canonical_form(G) == canonical_form(make("B12"))


def test_generate_json():
    code, out = run(["generate", "--family", "Q", "--order", "14", "--json"])
    rec = json.loads(out)
    assert rec["order"] == 14 and len(rec["edges"]) == 25


@pytest.mark.parametrize("argv", [
    ["generate", "--family", "prism", "--order", "10"],
    ["generate", "--family", "nope"],
    ["generate", "--family", "prism"],
])
def test_generate_bad_family_arguments(argv):
    assert run(argv)[0] == EXIT_USAGE


def test_enumerate_text():
    code, out = run(["enumerate", "--max-order", "8"])
    lines = out.strip().splitlines()
    assert code == EXIT_OK and len(lines) == 1 + 1 + 1 + 5
    assert sum("mccuaig=true" in line for line in lines) == 4


def test_enumerate_minimal_json():
    code, out = run(["enumerate", "--max-order", "10", "--minimal", "--json"])
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["order"] for r in recs].count(10) == 3
    assert all(r["minimal"] for r in recs)
    expected = {canonical_form(make(n)).hex() for n in ("M10", "B10", "Q10plus")}
    assert {r["form"] for r in recs if r["order"] == 10} == expected


def test_enumerate_guardrail():
    assert run(["enumerate", "--max-order", "16"])[0] == EXIT_USAGE


def test_mpp_q10plus(graph_file):
    code, out = run(["mpp", "--json", graph_file("Q10plus")])
    rec = json.loads(out)
    assert code == EXIT_OK
    assert rec["index"] == 1 and len(rec["F"]) == 1 and rec["narrow"]
    assert canonical_form(parse_graph(rec["J"])) == canonical_form(make("B8"))


def test_mpp_text(graph_file):
    code, out = run(["mpp", graph_file("Q12")])
    first, rest = out.split("\n", 1)
    assert code == EXIT_OK and "narrow=true" in first
    assert rest.startswith("bipartite ")


def test_mpp_rejects_mccuaig(graph_file):
    assert run(["mpp", graph_file("B10")])[0] == EXIT_USAGE


def test_verify_twelve():
    code, out = run(["verify", "--max-order", "12"])
    assert code == EXIT_OK
    assert all("status=pass" in line for line in out.strip().splitlines())


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["verify"], ["verify", "--max-order", "7"],
                                  ["verify", "--max-order", "8", "--workers", "0"]])
def test_usage_errors(argv):
    assert run(argv)[0] == EXIT_USAGE


def test_bad_input_file(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("bipartite 2 2\n0 0\n3 3\n")
    assert run(["check", str(p)])[0] == EXIT_USAGE
    assert "line 3" in capsys.readouterr().err
    assert run(["check", str(tmp_path / "missing.txt")])[0] == EXIT_USAGE


def test_module_entry_point_pipeline():
    gen = subprocess.run([sys.executable, "-m", "minbrace", "generate", "--family", "Q10plus"],
                         capture_output=True, text=True, check=True)
    chk = subprocess.run([sys.executable, "-m", "minbrace", "check"], input=gen.stdout,
                         capture_output=True, text=True)
    assert chk.returncode == 0
    assert "minimal=true" in chk.stdout


def test_verify_reports_failures(monkeypatch):
    from minbrace import enumeration
    from minbrace.enumeration import CheckResult

    def fake(max_order, **kw):
        return [CheckResult("oracle", 3), CheckResult("bound", 2, [("00ff", "m=21 exceeds 5n-10=20")])]

    monkeypatch.setattr(enumeration, "run_harness", fake)
    code, out = run(["verify", "--max-order", "8"])
    lines = out.strip().splitlines()
    assert code == EXIT_VIOLATION
    assert lines[0] == "check=oracle status=pass checked=3 failures=0"
    assert lines[1] == "check=bound status=fail checked=2 failures=1"
    assert "offender=00ff" in lines[2]
