import io
import subprocess
import sys

import pytest

from hurwitz_scrambler import fixture_path
from hurwitz_scrambler.cli import main
from hurwitz_scrambler.scrambler import parse_scrambler


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def fx(name):
    return str(fixture_path(name))


def test_analyze_rabbit():
    code, text = run("analyze", fx("rabbit.scr"))
    assert code == 0
    assert "verdict: Contracting(3)" in text


def test_analyze_dendrite():
    code, text = run("analyze", fx("dendrite.scr"))
    assert code == 10
    assert "verdict: Obstructed witness=c -> c length=1" in text


def test_analyze_twisted_levels():
    code, text = run("analyze", fx("twisted_cubic.scr"), "--levels", "3")
    assert code == 10
    assert "n=1: AllUnobstructed" in text and "n=2: AllUnobstructed" in text
    assert "n=3: ObstructedWitness" in text


def test_analyze_undecided(tmp_path):
    f = tmp_path / "swap.scr"
    f.write_text("scrambler v1\nvertex a dim 2\nedge a -> a [ 0 1 ; 1/2 0 ]\n")
    code, text = run("analyze", str(f), "--max-product-len", "1")
    assert code == 20 and "Undecided" in text


def test_analyze_json_and_dot():
    import json

    code, text = run("analyze", fx("rabbit.scr"), "--json")
    data = json.loads(text)
    assert data["verdict"] == "Contracting" and data["verdict.level"] == 3
    assert (data["jsr.lower.base"], data["jsr.lower.root"]) == ("1/4", 3)
    code, text = run("analyze", fx("rabbit.scr"), "--format", "dot")
    assert code == 0 and text.startswith("digraph")


def test_env_budget(monkeypatch):
    monkeypatch.setenv("SCRAMBLER_BUDGET_PRODUCTS", "1")
    code, text = run("analyze", fx("cubic5.scr"), "--levels", "2")
    assert "budget exceeded" in text
    monkeypatch.setenv("SCRAMBLER_BUDGET_PRODUCTS", "lots")
    assert run("analyze", fx("rabbit.scr"))[0] == 2


def test_deterministic():
    for name in ("rabbit.scr", "cubic5.scr"):
        assert run("analyze", fx(name)) == run("analyze", fx(name))


def test_build_dendrite():
    code, text = run("build", "--phi", "(1-2/w)^2", "--rho", "w", "--labels", "0=a,inf=b,1=c")
    assert code == 0
    s = parse_scrambler(text)
    assert {(e.src, e.dst) for e in s.edges} == {("c", "c"), ("c", "b"), ("b", "a"), ("a", "empty")}
    assert "# fiber table (w):" in text


def test_build_fixed_cubic():
    code, text = run(
        "build",
        "--phi", "(1+t)*(-1+3*t)^3/(16*t)",
        "--rho", "(-1+2*t+3*t^2)/(4*t)",
        "--var", "t",
        "--labels", "0=a,1=b,inf=c",
    )
    s = parse_scrambler(text)
    assert code == 0 and len(s.edges) == 6 and all(e.src == e.dst for e in s.edges)


def test_build_identity():
    code, text = run("build", "--phi", "w", "--rho", "w")
    s = parse_scrambler(text)
    assert len(s.edges) == 3 and all(e.src == e.dst for e in s.edges)


@pytest.mark.parametrize(
    "argv",
    [
        ("build", "--phi", "w+", "--rho", "w"),
        ("build", "--phi", "3", "--rho", "w"),
        ("build", "--phi", "w", "--rho", "w", "--labels", "0=a"),
        ("analyze", "/nonexistent.scr"),
        ("dot", "/nonexistent.scr"),
        ("classify", "/nonexistent.por"),
        ("analyze", "x.scr", "--max-cycle-len", "0"),
        ("frobnicate",),
    ],
)
def test_invalid_input(argv):
    assert run(*argv)[0] == 2


def test_invalid_files(tmp_path):
    bad = tmp_path / "bad.scr"
    bad.write_text("scrambler v1\nedge a -> b [ 1 ]\n")
    assert run("dot", str(bad))[0] == 2
    assert run("analyze", str(bad))[0] == 2
    por = tmp_path / "bad.por"
    por.write_text("portrait v1 degree 2\nvertex z deg 3\nmap z -> z\n")
    assert run("classify", str(por))[0] == 2


def test_classify():
    code, text = run("classify", fx("cubic5.por"))
    assert code == 0 and "case: Case4(p=2, k=2" in text
    code, text = run("classify", fx("cubic5.por"), "--iterate", "2")
    assert code == 30 and "case: NotCovered" in text
    code, text = run("classify", fx("rabbit.por"))
    assert code == 0 and "case: Case2" in text


def test_dot():
    code, text = run("dot", fx("dendrite.scr"))
    assert code == 0 and text == run("dot", fx("dendrite.scr"))[1]
    code, text = run("dot", fx("cubic5.scr"))
    assert '"ab&cd" -> "ad&bc"' in text and '"ad&bc" -> "ab&cd"' in text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hurwitz_scrambler", "analyze", fx("dendrite.scr")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 10
