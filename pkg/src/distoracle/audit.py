"""
Stretch and size audits, plus the structural invariant checks the test suite and the CLI run.

Every check returns the list of violations it found; an empty list means the invariant holds.
"""

from __future__ import annotations

import logging
import time
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Any, Literal, Protocol, Sequence

import numpy as np

from .composite import CompositeOracle
from .exact import ExactOracle, ball_B_S, exact_oracle
from .exception import SizeGuardError
from .graph import INF, Graph
from .rng import make_rng
from .spanner import SpannerSubgraph
from .sssp import DistanceArray, SampleAssignment, SparsifiedGraph, dijkstra
from .tz import TZOracle

logger = logging.getLogger(__name__)

ALL_PAIRS_LIMIT = 1024
SIZE_CONSTANT = 10


class DistanceOracle(Protocol):
    stretch_bound: int

    def query(self, u: int, v: int) -> Any: ...


@dataclass(frozen=True)
class PairSample:
    """Vertex pairs to audit.

    Attributes:
        pairs (tuple): (u, v) pairs.
        mode (str): "all" (every u < v) or "sampled" (uniform pairs of distinct vertices).
        seed (int | None): Seed of a sampled set.
    """

    pairs: tuple[tuple[int, int], ...]
    mode: Literal["all", "sampled"]
    seed: int | None = None

    @classmethod
    def all_pairs(cls, n: int) -> PairSample:
        if n > ALL_PAIRS_LIMIT:
            raise SizeGuardError(f"all-pairs audits are limited to n <= {ALL_PAIRS_LIMIT}, got n={n}; sample pairs instead")
        return cls(tuple((u, v) for u in range(n) for v in range(u + 1, n)), "all")

    @classmethod
    def sampled(cls, n: int, count: int, seed: int) -> PairSample:
        if n < 2:
            return cls((), "sampled", seed)
        rng = make_rng(seed, "pairs")
        us = rng.integers(0, n, size=count)
        vs = (us + rng.integers(1, n, size=count)) % n
        return cls(tuple(zip(us.tolist(), vs.tolist())), "sampled", seed)

    @classmethod
    def parse(cls, mode: str, n: int, seed: int = 0) -> PairSample:
        """"all" or "sample=N"."""
        if mode == "all":
            return cls.all_pairs(n)
        if mode.startswith("sample="):
            return cls.sampled(n, int(mode.split("=", 1)[1]), seed)
        raise ValueError(f"pair mode must be 'all' or 'sample=N', got {mode!r}")


@dataclass
class SizeAudit:
    entries: dict[str, int]
    budget: float
    within_budget: bool
    restricted_entries: int | None = None
    restricted_budget: float | None = None
    restricted_within_budget: bool | None = None


@dataclass
class AuditReport:
    """Outcome of a stretch audit; `passed` iff no violation was recorded."""

    graph: dict[str, int]
    oracle_kind: str
    params: dict[str, Any]
    stretch_bound: int
    pair_mode: str
    pairs_audited: int
    max_stretch: float
    mean_stretch: float
    violations: list[dict[str, Any]] = field(default_factory=list)
    estimate_wins: dict[str, int] = field(default_factory=dict)
    size: SizeAudit | None = None
    timings: dict[str, float] = field(default_factory=dict)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        record = asdict(self)
        record["passed"] = self.passed
        return record


def _exact_rows(g: Graph, sources: Sequence[int], exact: ExactOracle | None) -> dict[int, Any]:
    if exact is not None:
        return {u: exact.row(u) for u in sources}
    return {u: dijkstra(g, u).dist for u in sources}


def audit_size(oracle: CompositeOracle | TZOracle, size_constant: float = SIZE_CONSTANT) -> SizeAudit:
    """Count stored entries and compare with size_constant * k * n^(1+1/k).

    A restricted far oracle is also compared with size_constant * kappa * |S| * n^(1/kappa).
    """
    if isinstance(oracle, TZOracle):
        entries = {"bunches": oracle.bunch_entries(), "pivots": oracle.pivot_entries()}
        entries["total"] = entries["bunches"] + entries["pivots"]
        k, n = oracle.kappa, oracle.n
    else:
        entries = oracle.entry_counts()
        k, n = oracle.k, oracle.n
    budget = size_constant * k * max(n, 1) ** (1 + 1 / k)
    audit = SizeAudit(entries, budget, entries["total"] <= budget)
    far = oracle.far_oracle if isinstance(oracle, CompositeOracle) else (oracle if oracle.restricted else None)
    if far is not None:
        kappa = far.kappa
        audit.restricted_entries = far.entry_count()
        audit.restricted_budget = size_constant * kappa * len(far.stored) * max(far.n, 1) ** (1 / kappa)
        audit.restricted_within_budget = audit.restricted_entries <= audit.restricted_budget
    return audit


def audit_stretch(oracle: DistanceOracle, g: Graph, pairs: PairSample, exact: ExactOracle | None = None) -> AuditReport:
    """Compare every pair's estimate with the exact distance.

    An estimate below the exact distance, or above `oracle.stretch_bound` times it, is a violation.
    """
    start = time.perf_counter()
    by_source: dict[int, list[int]] = defaultdict(list)
    for u, v in pairs.pairs:
        by_source[u].append(v)
    rows = _exact_rows(g, sorted(by_source), exact)
    bound = oracle.stretch_bound
    split = isinstance(oracle, CompositeOracle) and oracle.assignment is not None
    wins = {"d1": 0, "d2": 0, "tie": 0} if split else {}

    violations: list[dict[str, Any]] = []
    stretches: list[float] = []
    for u in sorted(by_source):
        row = rows[u]
        for v in by_source[u]:
            d = row[v]
            d = INF if d == INF or d < 0 else int(d)
            estimate = oracle.query(u, v)
            if split:
                d1, d2 = oracle.estimates(u, v)  # type: ignore[union-attr]
                wins["tie" if d1 == d2 else "d1" if d1 < d2 else "d2"] += 1
            if d == INF:
                if estimate != INF:
                    violations.append({"u": u, "v": v, "estimate": estimate, "exact": None, "kind": "below-exact"})
                continue
            if estimate < d:
                violations.append({"u": u, "v": v, "estimate": estimate, "exact": d, "kind": "below-exact"})
            elif estimate > bound * d:
                violations.append({"u": u, "v": v, "estimate": estimate, "exact": d, "kind": "over-bound"})
            if d > 0:
                stretches.append(estimate / d)
            elif estimate == 0:
                stretches.append(1.0)

    report = AuditReport(
        graph={"n": g.n, "m": g.m},
        oracle_kind=getattr(oracle, "kind", type(oracle).__name__),
        params=dict(getattr(oracle, "params", {})),
        stretch_bound=bound,
        pair_mode=pairs.mode,
        pairs_audited=len(pairs.pairs),
        max_stretch=max(stretches, default=1.0),
        mean_stretch=float(np.mean(stretches)) if stretches else 1.0,
        violations=violations,
        estimate_wins=wins,
        size=audit_size(oracle) if isinstance(oracle, (CompositeOracle, TZOracle)) else None,
        seed=getattr(oracle, "metadata", {}).get("seed", pairs.seed),
    )
    report.timings["audit"] = time.perf_counter() - start
    if isinstance(oracle, CompositeOracle):
        report.timings.update(oracle.timings)
    if violations:
        logger.warning("audit found %d violation(s) over %d pairs", len(violations), len(pairs.pairs))
    logger.info("audited %d pairs: max stretch %.3f, mean %.3f (bound %d)", len(pairs.pairs), report.max_stretch, report.mean_stretch, bound)
    return report


# ---------------------------------------------------------------------------
# structural invariants


def check_relaxation_fixpoint(g: Graph, run: DistanceArray) -> list[tuple[int, int]]:
    """Edges (u, v) with dist[v] > dist[u] + w, plus broken parent chains."""
    bad = [(u, v) for u, v, w in g.edges() for a, b in ((u, v), (v, u)) if run.dist[b] > run.dist[a] + w]
    for v, p in enumerate(run.parent):
        if p >= 0 and run.dist[v] != run.dist[p] + g.edge_weight(p, v):
            bad.append((p, v))
    return bad


def check_sample_assignment(g: Graph, sa: SampleAssignment, exact: ExactOracle) -> list[int]:
    """Vertices whose d_S or p_S disagrees with the exact minimum over S."""
    samples = list(sa.samples)
    bad = []
    for u in range(g.n):
        row = exact.row(u)[samples]
        if sa.distance[u] != int(row.min()) or int(exact.row(u)[sa.nearest[u]]) != sa.distance[u] or (sa.distance[u] == 0) != (u in sa.samples):
            bad.append(u)
    return bad


def check_sparsified_exactness(g: Graph, sparsified: SparsifiedGraph, exact: ExactOracle) -> list[tuple[int, int]]:
    """Pairs (u, v) with v in B_S(u) whose distance in G_S differs from the distance in G."""
    sparse = sparsified.graph
    bad = []
    for u in range(g.n):
        ball = ball_B_S(g, sparsified.assignment, u, exact)
        if not ball:
            continue
        dist = dijkstra(sparse, u).dist
        bad.extend((u, v) for v in sorted(ball) if dist[v] != exact.query(u, v))
    return bad


def check_spanner(spanner: SpannerSubgraph, exact: ExactOracle | None = None) -> list[tuple[int, int]]:
    """Pairs violating d_H <= (2k'-1) d_G, plus edges of H absent from G."""
    g, h = spanner.base, spanner.graph
    bad = [(u, v) for u, v, w in h.edges() if g.edge_weight(u, v) != w]
    exact_g = exact or exact_oracle(g)
    exact_h = exact_oracle(h)
    over = np.argwhere((exact_h.table > spanner.stretch * exact_g.table) | (exact_h.table < 0))
    bad.extend((int(u), int(v)) for u, v in over if u < v)
    return bad


def check_bunch_law(tz: TZOracle, exact: ExactOracle) -> list[tuple[int, int]]:
    """(v, w) pairs where stored bunch membership or distance disagrees with the bunch definition."""
    levels = tz.levels()
    level_dist = []
    for i in range(tz.kappa):
        cols = exact.table[:, levels[i]]
        masked = np.where(cols < 0, np.iinfo(np.int64).max, cols)
        level_dist.append(masked.min(axis=1))
    bad = []
    for v in tz.stored:
        bunch = tz.bunches[v]
        for w in range(tz.n):
            i = tz.level_of[w]
            d = int(exact.table[w, v])
            threshold = level_dist[i + 1][v] if i + 1 < tz.kappa else np.iinfo(np.int64).max
            member = d >= 0 and d < threshold
            if member != (w in bunch) or (member and bunch[w] != d):
                bad.append((v, w))
    return bad
