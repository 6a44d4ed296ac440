"""
Thorup-Zwick distance oracle with an optional restriction to a query set S.

Levels V = A_0 ⊇ A_1 ⊇ ... ⊇ A_{kappa-1} ⊇ A_kappa = ∅ are drawn by keeping each vertex of the previous
level with probability n^(-1/kappa). For every stored vertex v the oracle keeps its pivots
p_i(v) (nearest vertex of A_i, smallest id on ties) with d(A_i, v), and its bunch

    B(v) = { w in A_i \\ A_{i+1} : d(w, v) < d(A_{i+1}, v) }

mapping each member to its exact distance. Bunches are computed by inverting clusters: the cluster of
w in A_i \\ A_{i+1} is grown by a Dijkstra from w that only enters v while the tentative distance beats
d(A_{i+1}, v).

The built graph need not be connected. A query between different components answers `INF`; within a
component the level structure still guarantees termination and stretch 2*kappa - 1.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exception import GraphValidationError, ParameterError, QueryError
from .graph import INF, Graph, ValidationReport, validate_graph
from .rng import bernoulli_subset, make_rng, sampling_probability
from .sssp import ROUND_CAP, multi_source_dijkstra

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TZOracle:
    """A built (possibly restricted) Thorup-Zwick oracle.

    Attributes:
        n (int): Vertex count of the built graph.
        m (int): Edge count of the built graph.
        kappa (int): Effective level count.
        kappa_requested (int): Level count asked for; larger than `kappa` only after the level fallback.
        level_of (tuple[int, ...]): Highest level index i with v in A_i, per vertex.
        restricted (bool): Whether pivots and bunches exist only for `stored`.
        stored (tuple[int, ...]): Vertices with pivots and bunches, sorted.
        pivots (dict): v -> ((p_0(v), d(A_0, v)), ..., (p_{kappa-1}(v), d(A_{kappa-1}, v))); p = -1 when unreachable.
        bunches (dict): v -> {w: d(w, v)} in ascending w order.
        connected (bool): Whether the built graph was connected.
        level_rounds (int): Level sampling rounds drawn.
    """

    n: int
    m: int
    kappa: int
    kappa_requested: int
    level_of: tuple[int, ...]
    restricted: bool
    stored: tuple[int, ...]
    pivots: dict[int, tuple[tuple[int, int], ...]]
    bunches: dict[int, dict[int, int]]
    connected: bool = True
    level_rounds: int = 1

    @property
    def stretch_bound(self) -> int:
        return 2 * self.kappa - 1

    def levels(self) -> list[list[int]]:
        """A_0 .. A_{kappa-1} as sorted vertex lists."""
        return [[v for v, top in enumerate(self.level_of) if top >= i] for i in range(self.kappa)]

    def bunch_entries(self) -> int:
        return sum(len(b) for b in self.bunches.values())

    def pivot_entries(self) -> int:
        return len(self.stored) * self.kappa

    def entry_count(self) -> int:
        return self.bunch_entries() + self.pivot_entries()

    def mean_bunch_size(self) -> float:
        return self.bunch_entries() / len(self.stored) if self.stored else 0.0

    def query(self, u: int, v: int):
        return tz_query(self, u, v)


def _check_positive(g: Graph) -> ValidationReport:
    report = validate_graph(g)
    if not (report.symmetric and report.positive):
        raise GraphValidationError(report)
    return report


def _check_injected(n: int, kappa: int, injected: Sequence[Iterable[int]]) -> list[list[int]]:
    if len(injected) != kappa - 1:
        raise ParameterError(f"expected {kappa - 1} injected levels A_1..A_{kappa - 1}, got {len(injected)}")
    levels = [list(range(n))]
    for i, level in enumerate(injected, start=1):
        members = sorted(set(level))
        if not set(members) <= set(levels[-1]):
            raise ParameterError(f"injected level A_{i} is not a subset of A_{i - 1}")
        levels.append(members)
    if kappa > 1 and not levels[-1]:
        raise ParameterError(f"injected level A_{kappa - 1} is empty")
    return levels


def _sample_levels(n: int, kappa: int, seed: int, round_cap: int) -> tuple[list[list[int]], int]:
    p = sampling_probability(n, Fraction(1, kappa))
    levels: list[list[int]] = [list(range(n))]
    for round_ in range(round_cap):
        rng = make_rng(seed, "tz-levels", round_)
        levels = [list(range(n))]
        for _ in range(1, kappa):
            levels.append(bernoulli_subset(rng, levels[-1], p))
        if levels[-1]:
            return levels, round_ + 1
    while not levels[-1]:
        levels.pop()
    logger.warning("A_%d stayed empty for %d rounds; falling back to %d levels", kappa - 1, round_cap, len(levels))
    return levels, round_cap


def _grow_cluster(adjacency, w: int, threshold: list | None) -> dict[int, int]:
    """Exact distances from w to every v with d(w, v) < threshold[v]; `None` means no bound."""
    settled: dict[int, int] = {}
    tentative = {w: 0}
    heap = [(0, w)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in settled or d != tentative[u]:
            continue
        settled[u] = d
        for x, wt in adjacency[u]:
            nd = d + wt
            if x in settled or (threshold is not None and nd >= threshold[x]):
                continue
            if nd < tentative.get(x, INF):
                tentative[x] = nd
                heapq.heappush(heap, (nd, x))
    return settled


def build_tz(
    g: Graph,
    kappa: int,
    seed: int,
    restriction: Iterable[int] | None = None,
    injected_levels: Sequence[Iterable[int]] | None = None,
    round_cap: int = ROUND_CAP,
) -> TZOracle:
    """Build a Thorup-Zwick oracle with `kappa` levels over `g`.

    Args:
        g (Graph): Graph with positive weights; may be disconnected.
        kappa (int): Level count, at least 1. kappa = 1 stores every exact distance.
        seed (int): Seed for level sampling; round r uses the stream `(seed, "tz-levels", r)`.
        restriction (Iterable[int] | None): Keep pivots and bunches only for these vertices.
        injected_levels (Sequence | None): Explicit A_1..A_{kappa-1} in place of sampling.
        round_cap (int): Level sampling rounds before truncating to the non-empty levels.

    Returns:
        TZOracle: The built oracle.

    Raises:
        ParameterError: kappa < 1, an empty restriction, or injected levels that are not nested.

    Examples:
        >>> p3 = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
        >>> build_tz(p3, 2, seed=0, injected_levels=[[1]]).bunches[2]
        {1: 1, 2: 0}
    """
    if kappa < 1:
        raise ParameterError(f"kappa must be >= 1, got {kappa}")
    report = _check_positive(g)
    n = g.n
    if restriction is None:
        stored = tuple(range(n))
    else:
        stored = tuple(sorted(set(restriction)))
        if not stored:
            raise ParameterError("restricted oracle needs a non-empty vertex set")
        if stored[0] < 0 or stored[-1] >= n:
            raise ParameterError(f"restriction holds vertices outside [0, {n})")

    if injected_levels is not None:
        levels, rounds = _check_injected(n, kappa, injected_levels), 0
    elif n == 0:
        levels, rounds = [[]], 0
    else:
        levels, rounds = _sample_levels(n, kappa, seed, round_cap)
    effective = len(levels)

    level_of = [0] * n
    for i, level in enumerate(levels):
        for v in level:
            level_of[v] = i

    runs = [multi_source_dijkstra(g, level) for level in levels]
    pivots = {v: tuple((run.root[v], run.dist[v]) for run in runs) for v in stored}

    stored_set = set(stored)
    bunches: dict[int, dict[int, int]] = {v: {} for v in stored}
    adjacency = g.adjacency
    for i, level in enumerate(levels):
        threshold = runs[i + 1].dist if i + 1 < effective else None
        for w in level:
            if level_of[w] != i:
                continue
            for v, d in _grow_cluster(adjacency, w, threshold).items():
                if v in stored_set:
                    bunches[v][w] = d
        logger.debug("tz level %d: |A_%d|=%d", i, i, len(level))
    for v in stored:
        bunches[v] = dict(sorted(bunches[v].items()))

    oracle = TZOracle(
        n=n,
        m=g.m,
        kappa=effective,
        kappa_requested=kappa,
        level_of=tuple(level_of),
        restricted=restriction is not None,
        stored=stored,
        pivots=pivots,
        bunches=bunches,
        connected=report.connected,
        level_rounds=rounds,
    )
    logger.info(
        "tz oracle kappa=%d%s: %d stored vertices, %d bunch entries (mean %.1f)",
        effective,
        " (restricted)" if oracle.restricted else "",
        len(stored),
        oracle.bunch_entries(),
        oracle.mean_bunch_size(),
    )
    return oracle


def tz_query(o: TZOracle, u: int, v: int):
    """Distance estimate e with d(u, v) <= e <= (2*kappa - 1) d(u, v) in the built graph.

    Endpoints are ordered by id first, so the answer is symmetric. `INF` when u and v are in different
    components of the built graph.

    Raises:
        QueryError: An endpoint is out of range, or outside S for a restricted oracle.
    """
    for x in (u, v):
        if not 0 <= x < o.n:
            raise QueryError(f"vertex {x} outside [0, {o.n})")
        if o.restricted and x not in o.pivots:
            raise QueryError(f"vertex {x} is not in the restriction set of this oracle")
    if u > v:
        u, v = v, u
    w, d_wu = u, 0
    i = 0
    bunches, pivots = o.bunches, o.pivots
    while w not in bunches[v]:
        i += 1
        if i == o.kappa:
            assert not o.connected, f"query ({u}, {v}) did not terminate within {o.kappa - 1} swaps"
            return INF
        u, v = v, u
        w, d_wu = pivots[u][i]
        if w < 0:
            assert not o.connected, f"vertex {u} has no level-{i} pivot in a connected graph"
            return INF
    return d_wu + bunches[v][w]
