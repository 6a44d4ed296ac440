import csv
import json

import pytest

from distoracle.bench import COLUMNS, Scenario, bench_run, deterministic_columns, fit_exponents, run_scenario
from distoracle.exception import ScenarioError


def test_single_path_cell():
    rows = bench_run(Scenario.from_mapping({"families": ["path"], "sizes": [3], "kinds": ["tz"], "k": [1], "queries": 10}))
    assert len(rows) == 1
    row = rows[0]
    assert (row["n"], row["m"], row["kind"], row["built_kind"]) == (3, 2, "tz", "tz")
    assert row["stretch_max"] == 1.0
    assert row["violations"] == 0
    assert row["entries"] == 9 + 3
    assert set(row) == set(COLUMNS)


def test_deterministic_columns_repeat():
    scenario = Scenario.from_mapping(
        {"families": ["gnm", "grid"], "sizes": [40], "kinds": ["tz", "small-k"], "k": [3], "seeds": [0, 1], "pairs": 200, "queries": 20}
    )
    first = [deterministic_columns(r) for r in bench_run(scenario)]
    second = [deterministic_columns(r) for r in bench_run(scenario)]
    assert first == second
    assert all(r["violations"] == 0 for r in first)


def test_failed_cell_is_recorded():
    rows = bench_run(Scenario.from_mapping({"families": ["path"], "sizes": [8], "kinds": ["small-k"], "k": [2], "queries": 5}))
    assert "k >= 3" in rows[0]["error"]
    assert rows[0]["violations"] == ""


@pytest.mark.parametrize(
    "raw",
    [
        {"families": ["gnm"], "colour": "red"},
        {"families": ["hypercube"]},
        {"kinds": ["exact"]},
        {"sizes": ["many"]},
        {"seeds": []},
        {"param_mode": "medium-k"},
        {"epsilon": "1/0"},
    ],
)
def test_scenario_errors(raw):
    with pytest.raises(ScenarioError):
        Scenario.from_mapping(raw)


def test_scenario_scalars_become_lists():
    scenario = Scenario.from_mapping({"families": "grid", "sizes": 16, "k": 4, "epsilon": "1/3"})
    assert scenario.families == ("grid",)
    assert scenario.sizes == (16,)
    assert scenario.k == (4,)
    assert scenario.epsilon.denominator == 3


def test_load_toml_and_json5(write_text):
    toml = write_text("s.toml", 'families = ["path"]\nsizes = [3]\nkinds = ["tz"]\nk = [1]\n')
    json5 = write_text("s.json5", '{families: ["path"], sizes: [3], kinds: ["tz"], k: [1], /* note */}')
    assert Scenario.load(toml) == Scenario.load(json5)


def test_fit_exponents():
    rows = [
        {"family": "gnm", "kind": "tz", "k": 2, "n": n, "build_seconds": 0.001 * n**1.5, "error": ""} for n in (64, 128, 256, 512)
    ]
    rows.append({"family": "grid", "kind": "tz", "k": 2, "n": 64, "build_seconds": 0.5, "error": ""})
    fits = fit_exponents(rows)
    assert len(fits) == 1
    assert fits[0]["exponent"] == pytest.approx(1.5)


def test_run_scenario_writes_reports(write_text, tmp_path):
    scenario = write_text("s.json", json.dumps({"families": ["gnm"], "sizes": [16, 32], "kinds": ["tz"], "k": [2], "queries": 5}))
    out = str(tmp_path / "out" / "bench.csv")
    (tmp_path / "out").mkdir()
    rows, fits = run_scenario(scenario, out)
    with open(out, newline="") as f:
        written = list(csv.DictReader(f))
    assert len(written) == len(rows) == 2
    assert written[0]["family"] == "gnm"
    assert len(fits) == 1
    with open(tmp_path / "out" / "bench.fit.json") as f:
        assert json.load(f)[0]["sizes"] == [16, 32]


@pytest.mark.slow
def test_scaling_report(tmp_path, write_text):
    scenario = write_text(
        "scaling.toml",
        'families = ["gnm"]\nsizes = [1024, 2048, 4096]\nkinds = ["tz", "small-k"]\nk = [6]\nseeds = [0]\npairs = 1000\nqueries = 200\n',
    )
    rows, fits = run_scenario(scenario, str(tmp_path / "scaling.csv"))
    assert all(r["violations"] == 0 for r in rows)
    assert {f["kind"] for f in fits} == {"tz", "small-k"}
