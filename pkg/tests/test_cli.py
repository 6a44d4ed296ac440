import json

import pytest

from distoracle import cli
from distoracle.audit import AuditReport
from distoracle.generators import generate
from distoracle.graph import load_graph, write_graph
from distoracle.serialize import load_oracle


@pytest.fixture
def p3_file(write_text):
    return write_text("p3.txt", "0 1 1\n1 2 1\n")


@pytest.fixture
def p3_oracle(p3_file, tmp_path):
    out = str(tmp_path / "p3.dorc")
    assert cli.main(["build", "--input", p3_file, "--kind", "tz", "--k", "1", "--seed", "3", "--out", out]) == 0
    return out


def test_build_writes_oracle(p3_oracle, capsys):
    oracle = load_oracle(p3_oracle)
    assert oracle.kind == "tz"
    assert oracle.metadata["config"]["seed"] == 3


def test_query_single_pair(p3_oracle, capsys):
    capsys.readouterr()
    assert cli.main(["query", "--oracle", p3_oracle, "--pairs", "0,2"]) == 0
    assert capsys.readouterr().out.split() == ["0", "2", "2"]


def test_query_pairs_file(p3_oracle, write_text, capsys):
    pairs = write_text("pairs.txt", "# u v\n0 1\n2,1\n")
    capsys.readouterr()
    assert cli.main(["query", "--oracle", p3_oracle, "--pairs", pairs]) == 0
    assert capsys.readouterr().out.splitlines() == ["0 1 1", "2 1 1"]


def test_audit_all_pairs_with_report(p3_oracle, p3_file, tmp_path):
    report = str(tmp_path / "reports" / "audit.json")
    assert cli.main(["audit", "--oracle", p3_oracle, "--graph", p3_file, "--pairs", "all", "--report", report]) == 0
    with open(report) as f:
        content = json.load(f)
    assert content["passed"] is True
    assert content["pairs_audited"] == 3
    assert content["max_stretch"] == 1.0


def test_audit_violation_sets_exit_code(p3_oracle, p3_file, monkeypatch):
    failing = AuditReport({"n": 3, "m": 2}, "tz", {}, 1, "all", 1, 2.0, 2.0, violations=[{"u": 0, "v": 1, "kind": "over-bound"}])
    monkeypatch.setattr(cli, "audit_stretch", lambda *args, **kwargs: failing)
    assert cli.main(["audit", "--oracle", p3_oracle, "--graph", p3_file, "--pairs", "all"]) == cli.EXIT_VIOLATION


def test_audit_rejects_mismatched_graph(p3_oracle, write_text, capsys):
    other = write_text("p4.txt", "0 1 1\n1 2 1\n2 3 1\n")
    assert cli.main(["audit", "--oracle", p3_oracle, "--graph", other]) == cli.EXIT_ERROR
    assert "4" in capsys.readouterr().err


def test_build_largest_component(write_text, tmp_path, capsys):
    graph = write_text("two.gr", "p sp 5 3\na 1 2 1\na 3 4 2\na 4 5 2\n")
    out = str(tmp_path / "o.dorc")
    assert cli.main(["build", "--input", graph, "--kind", "tz", "--k", "1", "--out", out]) == cli.EXIT_ERROR
    assert cli.main(["build", "--input", graph, "--kind", "tz", "--k", "1", "--largest-component", "--out", out]) == 0
    capsys.readouterr()
    assert cli.main(["query", "--oracle", out, "--pairs", "3,5"]) == 0
    assert capsys.readouterr().out.split() == ["3", "5", "4"]
    assert cli.main(["audit", "--oracle", out, "--graph", graph, "--pairs", "all"]) == 0


def test_build_small_k_with_options(tmp_path):
    path = str(tmp_path / "g.txt")
    write_graph(generate("gnm", 60, seed=1), path)
    out = str(tmp_path / "o.dorc")
    args = ["build", "--input", path, "--kind", "near-linear", "--k", "100", "--param-mode", "large-k", "--seed", "2", "--out", out]
    assert cli.main(args) == 0
    assert load_oracle(out).params["kappa"] == 5
    assert cli.main(["audit", "--oracle", out, "--graph", path, "--pairs", "sample=500"]) == 0


def test_spanner_subcommand(p3_file, tmp_path):
    out = str(tmp_path / "h.gr")
    assert cli.main(["spanner", "--input", p3_file, "--k-prime", "2", "--seed", "0", "--out", out]) == 0
    assert load_graph(out, "dimacs-gr").m == 2


def test_bench_subcommand(write_text, tmp_path, capsys):
    scenario = write_text("s.toml", 'families = ["path"]\nsizes = [3]\nkinds = ["tz"]\nk = [1]\nqueries = 5\n')
    out = str(tmp_path / "bench.csv")
    assert cli.main(["bench", "--scenario", scenario, "--out", out]) == 0
    assert "1 cells" in capsys.readouterr().out


def test_bad_scenario(write_text, tmp_path):
    scenario = write_text("s.toml", "families = ['moebius']\n")
    assert cli.main(["bench", "--scenario", scenario, "--out", str(tmp_path / "b.csv")]) == cli.EXIT_ERROR


def test_missing_file(tmp_path):
    assert cli.main(["build", "--input", str(tmp_path / "nope.txt"), "--out", str(tmp_path / "o")]) == cli.EXIT_ERROR


def test_unknown_kind_is_a_usage_error(p3_file, tmp_path):
    with pytest.raises(SystemExit) as info:
        cli.main(["build", "--input", p3_file, "--kind", "exact", "--out", str(tmp_path / "o")])
    assert info.value.code == 2
