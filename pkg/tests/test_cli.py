import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

import pytest

from sardkit.cli import run
from sardkit.report import emit_report

FIXTURES = Path(str(resources.files("sardkit") / "fixtures"))
ALL = sorted(p.name for p in FIXTURES.glob("*.toml"))


def _run(tmp_path, *argv, sub="out"):
    out = tmp_path / sub
    code = run([*argv, "--out", str(out)])
    report = json.loads((out / "report.json").read_text()) if code == 0 else None
    return code, report, out


def test_emit_report_basics():
    assert emit_report({}) == "{}\n"
    r = {"b": 0.1, "a": [Fraction(1, 3), 2, None, True], "warnings": ["w"]}
    s = emit_report(r)
    assert s == emit_report(dict(reversed(list(r.items()))))
    assert s.endswith("\n")
    d = json.loads(s)
    assert list(d) == ["a", "b", "warnings"]
    assert d["a"][0] == "1/3" and len(d["warnings"]) == 1
    assert "0.10000000000000001" in s


@pytest.mark.parametrize("name", ALL)
def test_fixtures_analyze_without_warnings(tmp_path, name):
    code, rep, _ = _run(tmp_path, "analyze", str(FIXTURES / name))
    assert code == 0
    assert rep["warnings"] == []


def test_analyze_martinet(tmp_path):
    _, rep, _ = _run(tmp_path, "analyze", str(FIXTURES / "martinet.toml"))
    assert rep["results"]["h"] == "x1" and rep["results"]["S_empty"] is True
    assert len(rep["input_sha256"]) == 64


def test_analyze_heisenberg(tmp_path):
    _, rep, _ = _run(tmp_path, "analyze", str(FIXTURES / "heisenberg.toml"))
    assert rep["results"]["sigma_empty"] is True


def test_resolve_saddle(tmp_path):
    _, rep, _ = _run(tmp_path, "resolve", str(FIXTURES / "saddle.toml"))
    tree = rep["results"]["tree"]
    assert tree["depth"] == 0 and rep["results"]["final_classes"] == ["Saddle"]


def test_trace_focus_200(tmp_path):
    code, rep, out = _run(tmp_path, "trace", str(FIXTURES / "focus2d.toml"), "--returns", "200")
    assert code == 0
    mono = rep["results"]["monodromic"]
    assert mono["returns"] == 200
    assert 0.45 <= mono["fit_exponent"] <= 0.55
    assert (out / "trajectory.csv").read_text().startswith("t,u,v,cum_length\n")


def test_trace_saddle_transition(tmp_path):
    _, rep, _ = _run(tmp_path, "trace", str(FIXTURES / "saddle.toml"), "--seed", "3")
    assert rep["results"]["transition"]["violations"] == 0


def test_reach_and_endpoint(tmp_path):
    _, rep, out = _run(tmp_path, "reach", str(FIXTURES / "martinet.toml"))
    edges = rep["results"]["tree"]["edges"]
    assert len(edges) == 2 and all((out / e["polyline"]).exists() for e in edges)
    _, rep, _ = _run(tmp_path, "endpoint", str(FIXTURES / "martinet.toml"), sub="e")
    assert rep["results"]["rank"] == 2 and rep["results"]["lift"]["singular"] is True


def test_divcheck_and_classify(tmp_path):
    _, rep, _ = _run(tmp_path, "divcheck", str(FIXTURES / "focus2d.toml"))
    assert rep["results"]["membership"] == {"degree": 1, "f": "-4*y", "g": "4*x", "kind": "witness"}
    _, rep, _ = _run(tmp_path, "classify", str(FIXTURES / "twoplanes.toml"), sub="c")
    assert rep["results"]["points"][0]["label"] == "Sigma1_tr"


@pytest.mark.parametrize("cmd,name", [
    ("analyze", "martinet.toml"), ("analyze", "twoplanes.toml"), ("resolve", "saddle.toml"),
    ("reach", "twoplanes.toml"), ("trace", "saddle.toml"),
])
def test_determinism(tmp_path, cmd, name):
    _, _, a = _run(tmp_path, cmd, str(FIXTURES / name), "--seed", "4", sub="a")
    _, _, b = _run(tmp_path, cmd, str(FIXTURES / name), "--seed", "4", sub="b")
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_precondition_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text('[distribution]\nmode = "one_form"\ndelta = ["x1 +", "0", "1"]\n')
    assert run(["analyze", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert "byte offset" in capsys.readouterr().err
    assert run(["resolve", str(FIXTURES / "martinet.toml"), "--out", str(tmp_path / "o")]) == 2
    assert run(["trace", str(FIXTURES / "focus2d.toml"), "--tol", "1e-2",
                "--out", str(tmp_path / "o")]) == 2
    assert run(["analyze", str(tmp_path / "missing.toml"), "--out", str(tmp_path / "o")]) == 2
    flat = tmp_path / "flat.toml"
    flat.write_text('[distribution]\nmode = "one_form"\ndelta = ["0", "0", "1"]\n')
    assert run(["analyze", str(flat), "--out", str(tmp_path / "o")]) == 2


def test_internal_error_exit_code(tmp_path, monkeypatch):
    import sardkit.cli as cli

    def boom(*a):
        raise RuntimeError("boom")
    monkeypatch.setitem(cli.HANDLERS, "analyze", boom)
    assert run(["analyze", str(FIXTURES / "martinet.toml"), "--out", str(tmp_path / "o")]) == 1
