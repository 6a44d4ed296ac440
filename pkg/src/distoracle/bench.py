"""
Scenario-driven benchmark: build every (family, n, seed, kind, k) cell, audit it and time its queries.

Non-timing columns of the report are a deterministic function of the scenario.
"""

from __future__ import annotations

import csv
import logging
import time
from collections import defaultdict
from dataclasses import dataclass, fields
from fractions import Fraction
from itertools import product
from typing import Any, Sequence

import numpy as np

from .audit import PairSample, audit_size, audit_stretch
from .composite import ORACLE_KINDS, BuildConfig, build_oracle
from .exact import EXACT_LIMIT, exact_oracle
from .exception import DistOracleError, ScenarioError
from .generators import DEFAULT_EDGE_EXPONENT, DEFAULT_MAX_WEIGHT, FAMILIES, generate
from .jsonio import load_mapping, write_json_file
from .params import ParamMode
from .paths import sibling_path
from .rng import make_rng

logger = logging.getLogger(__name__)

STAGES = ("sample", "tz", "spanner", "far")
COLUMNS = (
    "family",
    "n",
    "m",
    "kind",
    "built_kind",
    "k",
    "seed",
    "stretch_bound",
    "pairs",
    "stretch_max",
    "stretch_mean",
    "violations",
    "entries",
    "budget",
    "within_budget",
    "samples",
    "build_seconds",
    *(f"{s}_seconds" for s in STAGES),
    "query_p50_us",
    "query_p99_us",
    "error",
)
TIMING_COLUMNS = frozenset(c for c in COLUMNS if c.endswith("_seconds") or c.endswith("_us"))


@dataclass(frozen=True)
class Scenario:
    """A benchmark grid; every combination of the list fields is one cell."""

    families: tuple[str, ...] = ("gnm",)
    sizes: tuple[int, ...] = (256,)
    edge_exponent: float = DEFAULT_EDGE_EXPONENT
    max_weight: int = DEFAULT_MAX_WEIGHT
    kinds: tuple[str, ...] = ("tz", "small-k")
    k: tuple[int, ...] = (3,)
    kappa: int | None = None
    epsilon: Fraction = Fraction(1)
    param_mode: ParamMode = "paper-c"
    seeds: tuple[int, ...] = (0,)
    pairs: int = 1000
    queries: int = 1000

    @classmethod
    def from_mapping(cls, raw: dict[str, Any]) -> Scenario:
        """Validate a parsed scenario table.

        Raises:
            ScenarioError: Unknown keys, unknown families or kinds, or values of the wrong shape.
        """
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ScenarioError(f"unknown scenario keys: {', '.join(unknown)}")
        values: dict[str, Any] = {}
        try:
            for key, value in raw.items():
                if key in ("families", "kinds"):
                    values[key] = tuple(str(x) for x in _as_list(value))
                elif key in ("sizes", "k", "seeds"):
                    values[key] = tuple(int(x) for x in _as_list(value))
                elif key == "epsilon":
                    values[key] = Fraction(str(value))
                elif key == "edge_exponent":
                    values[key] = float(value)
                elif key == "kappa":
                    values[key] = None if value is None else int(value)
                elif key == "param_mode":
                    values[key] = str(value)
                else:
                    values[key] = int(value)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ScenarioError(f"bad scenario value: {e}") from e
        scenario = cls(**values)
        for family in scenario.families:
            if family not in FAMILIES:
                raise ScenarioError(f"unknown graph family {family!r}")
        for kind in scenario.kinds:
            if kind not in ORACLE_KINDS:
                raise ScenarioError(f"unknown oracle kind {kind!r}")
        if scenario.param_mode not in ("paper-c", "large-k"):
            raise ScenarioError(f"unknown param_mode {scenario.param_mode!r}")
        if not (scenario.families and scenario.sizes and scenario.kinds and scenario.k and scenario.seeds):
            raise ScenarioError("families, sizes, kinds, k and seeds must be non-empty")
        return scenario

    @classmethod
    def load(cls, filename: str) -> Scenario:
        return cls.from_mapping(load_mapping(filename))


def _as_list(value: Any) -> list:
    return list(value) if isinstance(value, (list, tuple)) else [value]


def _latencies(oracle, n: int, count: int, seed: int) -> np.ndarray:
    rng = make_rng(seed, "latency")
    us = rng.integers(0, n, size=count).tolist()
    vs = rng.integers(0, n, size=count).tolist()
    samples = np.empty(count, dtype=np.float64)
    for j, (u, v) in enumerate(zip(us, vs)):
        start = time.perf_counter_ns()
        oracle.query(u, v)
        samples[j] = (time.perf_counter_ns() - start) / 1000
    return samples


def run_cell(scenario: Scenario, family: str, n: int, seed: int, kind: str, k: int, exact_cache: dict) -> dict[str, Any]:
    """Build, audit and time one cell; build failures are recorded in the `error` column."""
    g = generate(family, n, seed, scenario.max_weight, scenario.edge_exponent)
    row: dict[str, Any] = {c: "" for c in COLUMNS}
    row.update(family=family, n=g.n, m=g.m, kind=kind, k=k, seed=seed)
    config = BuildConfig(kind, k, scenario.epsilon, scenario.kappa, scenario.param_mode, seed)  # type: ignore[arg-type]
    try:
        oracle = build_oracle(g, config)
    except DistOracleError as e:
        logger.warning("cell %s n=%d seed=%d %s k=%d failed: %s", family, n, seed, kind, k, e)
        row["error"] = str(e)
        return row

    key = (family, n, seed)
    if key not in exact_cache and g.n <= EXACT_LIMIT:
        exact_cache[key] = exact_oracle(g)
    all_pairs = g.n * (g.n - 1) // 2
    pairs = PairSample.all_pairs(g.n) if all_pairs <= scenario.pairs else PairSample.sampled(g.n, scenario.pairs, seed)
    report = audit_stretch(oracle, g, pairs, exact_cache.get(key))
    size = audit_size(oracle)

    timings = oracle.timings
    latency = _latencies(oracle, g.n, scenario.queries, seed) if scenario.queries and g.n else np.zeros(1)
    row.update(
        built_kind=oracle.kind,
        stretch_bound=oracle.stretch_bound,
        pairs=report.pairs_audited,
        stretch_max=round(report.max_stretch, 6),
        stretch_mean=round(report.mean_stretch, 6),
        violations=len(report.violations),
        entries=size.entries["total"],
        budget=round(size.budget, 3),
        within_budget=size.within_budget,
        samples=len(oracle.assignment.samples) if oracle.assignment is not None else "",
        build_seconds=oracle.build_seconds,
        query_p50_us=float(np.percentile(latency, 50)),
        query_p99_us=float(np.percentile(latency, 99)),
    )
    for stage in STAGES:
        row[f"{stage}_seconds"] = timings.get(stage, "")
    return row


def bench_run(scenario: Scenario) -> list[dict[str, Any]]:
    """One report row per cell, in scenario order."""
    rows = []
    exact_cache: dict = {}
    for family, n, seed in product(scenario.families, scenario.sizes, scenario.seeds):
        exact_cache.clear()
        for kind, k in product(scenario.kinds, scenario.k):
            row = run_cell(scenario, family, n, seed, kind, k, exact_cache)
            logger.info("%s n=%d seed=%d %s k=%d: stretch max %s, %s violations", family, n, seed, kind, k, row["stretch_max"], row["violations"])
            rows.append(row)
    return rows


def fit_exponents(rows: Sequence[dict[str, Any]]) -> list[dict[str, Any]]:
    """Least-squares slope of log(build seconds) against log(n), per (family, kind, k).

    Groups with fewer than two distinct sizes are skipped.
    """
    grouped: dict[tuple, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    for row in rows:
        if row["error"] or not row["build_seconds"]:
            continue
        grouped[(row["family"], row["kind"], row["k"])][row["n"]].append(float(row["build_seconds"]))
    fits = []
    for (family, kind, k), by_n in sorted(grouped.items()):
        if len(by_n) < 2:
            continue
        sizes = sorted(by_n)
        seconds = [float(np.mean(by_n[n])) for n in sizes]
        slope, intercept = np.polyfit(np.log(sizes), np.log(seconds), 1)
        fits.append({"family": family, "kind": kind, "k": k, "exponent": float(slope), "intercept": float(intercept), "sizes": sizes})
        logger.info("fitted build-time exponent %s/%s k=%d: n^%.2f", family, kind, k, slope)
    return fits


def write_report(rows: Sequence[dict[str, Any]], filename: str) -> None:
    """CSV for .csv names, JSON or JSON Lines otherwise."""
    if filename.lower().endswith(".csv"):
        with open(filename, "w", newline="", encoding="utf8") as f:
            writer = csv.DictWriter(f, fieldnames=COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
    else:
        write_json_file(list(rows), filename)


def run_scenario(scenario_file: str, out: str) -> tuple[list[dict[str, Any]], list[dict[str, Any]]]:
    """Load a scenario, run it, write rows to `out` and fitted exponents to `<name>.fit.json` beside it."""
    rows = bench_run(Scenario.load(scenario_file))
    write_report(rows, out)
    fits = fit_exponents(rows)
    if fits:
        write_json_file(fits, sibling_path(out, ".fit.json"))
    return rows, fits


def deterministic_columns(row: dict[str, Any]) -> dict[str, Any]:
    return {c: v for c, v in row.items() if c not in TIMING_COLUMNS}
