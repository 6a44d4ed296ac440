"""
Command line entry point: `distoracle {build,query,audit,bench,spanner}`.

Exit status is 0 on success, 1 when an audit or bench run found a correctness violation, 2 on bad input.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from typing import Sequence

from .audit import PairSample, audit_stretch
from .bench import run_scenario
from .composite import ORACLE_KINDS, BuildConfig, build_oracle, prepare_graph
from .exact import EXACT_LIMIT, exact_oracle
from .exception import DistOracleError
from .graph import load_graph, require_valid, write_graph
from .jsonio import write_json_file
from .paths import infer_graph_format
from .serialize import load_oracle, save_oracle
from .spanner import build_spanner
from .version import __version__

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
EXIT_VIOLATION = 1
EXIT_ERROR = 2


def _add_graph_args(p: argparse.ArgumentParser, flag: str = "--input") -> None:
    p.add_argument(flag, required=True, help="graph file")
    p.add_argument("--format", choices=("dimacs-gr", "edge-list"), default=None, help="graph format; inferred from the extension by default")
    p.add_argument("--largest-component", action="store_true", help="keep only the largest connected component")


def _read_graph(path: str, format: str | None):
    return load_graph(path, format or infer_graph_format(path))  # type: ignore[arg-type]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distoracle", description="Approximate distance oracles for weighted undirected graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default="WARNING", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an oracle and write it to a file")
    _add_graph_args(p)
    p.add_argument("--kind", choices=ORACLE_KINDS, default="small-k")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--epsilon", type=Fraction, default=Fraction(1), help="warm-up accuracy, a rational such as 1/3")
    p.add_argument("--kappa", type=int, default=None, help="level count of a plain tz oracle")
    p.add_argument("--param-mode", choices=("paper-c", "large-k"), default="paper-c")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("query", help="answer distance queries from a built oracle")
    p.add_argument("--oracle", required=True)
    p.add_argument("--pairs", required=True, help="'u,v' or a file of 'u v' lines, in input-file labels")

    p = sub.add_parser("audit", help="compare an oracle's answers with exact distances")
    p.add_argument("--oracle", required=True)
    p.add_argument("--graph", required=True, help="graph the oracle was built from")
    p.add_argument("--format", choices=("dimacs-gr", "edge-list"), default=None)
    p.add_argument("--pairs", default="sample=100000", help="'all' or 'sample=N'")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled pairs")
    p.add_argument("--report", default=None, help="write the audit report as JSON")

    p = sub.add_parser("bench", help="run a benchmark scenario")
    p.add_argument("--scenario", required=True, help="TOML, JSON or JSON5 scenario")
    p.add_argument("--out", required=True, help="CSV (or JSON/JSONL) report")

    p = sub.add_parser("spanner", help="build a (2k'-1)-spanner and write its edges")
    _add_graph_args(p)
    p.add_argument("--k-prime", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    return parser


def _parse_pairs(value: str) -> list[tuple[int, int]]:
    if not os.path.exists(value):
        u, v = value.replace(",", " ").split()
        return [(int(u), int(v))]
    pairs = []
    with open(value, "r", encoding="utf8") as f:
        for line in f:
            line = line.split("#", 1)[0].replace(",", " ").strip()
            if line:
                u, v = line.split()[:2]
                pairs.append((int(u), int(v)))
    return pairs


def cmd_build(args: argparse.Namespace) -> int:
    g = _read_graph(args.input, args.format)
    config = BuildConfig(args.kind, args.k, args.epsilon, args.kappa, args.param_mode, args.seed)
    oracle = build_oracle(g, config, keep_largest_component=args.largest_component)
    size = save_oracle(oracle, args.out)
    print(f"built {oracle.kind} oracle (stretch <= {oracle.stretch_bound}) over n={oracle.n}: {size} bytes -> {args.out}")
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    oracle = load_oracle(args.oracle)
    for u, v in _parse_pairs(args.pairs):
        print(f"{u} {v} {oracle.query_labels(u, v)}")
    return 0


def cmd_audit(args: argparse.Namespace) -> int:
    oracle = load_oracle(args.oracle)
    g = _read_graph(args.graph, args.format)
    built = prepare_graph(g, oracle.metadata.get("largest_component", False)).graph
    if built.n != oracle.n:
        raise DistOracleError(f"oracle was built over {oracle.n} vertices but {args.graph} normalizes to {built.n}")
    require_valid(built)
    pairs = PairSample.parse(args.pairs, built.n, args.seed)
    exact = exact_oracle(built) if built.n <= EXACT_LIMIT else None
    report = audit_stretch(oracle, built, pairs, exact)
    if args.report:
        write_json_file(report.to_dict(), args.report)
    status = "PASS" if report.passed else "FAIL"
    print(
        f"{status}: {report.pairs_audited} pairs, max stretch {report.max_stretch:.4f}, mean {report.mean_stretch:.4f}, "
        f"bound {report.stretch_bound}, {len(report.violations)} violation(s)"
    )
    return 0 if report.passed else EXIT_VIOLATION


def cmd_bench(args: argparse.Namespace) -> int:
    rows, fits = run_scenario(args.scenario, args.out)
    violations = sum(int(r["violations"] or 0) for r in rows)
    print(f"{len(rows)} cells -> {args.out}; {violations} violation(s)")
    for fit in fits:
        print(f"  {fit['family']}/{fit['kind']} k={fit['k']}: build time ~ n^{fit['exponent']:.2f}")
    return 0 if violations == 0 else EXIT_VIOLATION


def cmd_spanner(args: argparse.Namespace) -> int:
    g = _read_graph(args.input, args.format)
    reduced = prepare_graph(g, args.largest_component)
    spanner = build_spanner(reduced.graph, args.k_prime, args.seed)
    write_graph(spanner.graph, args.out, infer_graph_format(args.out))
    print(f"spanner with stretch {spanner.stretch}: {spanner.m} of {reduced.graph.m} edges -> {args.out}")
    return 0


_COMMANDS = {"build": cmd_build, "query": cmd_query, "audit": cmd_audit, "bench": cmd_bench, "spanner": cmd_spanner}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, stream=sys.stderr)
    try:
        return _COMMANDS[args.command](args)
    except (DistOracleError, OSError, ValueError) as e:
        print(f"distoracle {args.command}: {e}", file=sys.stderr)
        return EXIT_ERROR
