"""
Exact shortest-path primitives.

`multi_source_dijkstra` is the workhorse: single-source Dijkstra, nearest-sample assignment and the
per-level pivot computation of the Thorup-Zwick oracle are all calls to it. The queue is a binary heap
with decrease-key by reinsertion; stale entries are skipped when popped.

Ties between sources at equal distance go to the smallest source id: keys are compared as
`(distance, source)` pairs, an order that path extension preserves.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exception import ParameterError
from .graph import INF, Graph
from .rng import bernoulli_subset, make_rng, sampling_probability

logger = logging.getLogger(__name__)

ROUND_CAP = 100
SAMPLE_WINDOW = 2
EDGE_BUDGET_FACTOR = 4


@dataclass(frozen=True)
class DistanceArray:
    """Result of a (multi-source) Dijkstra run.

    Attributes:
        sources (tuple[int, ...]): Source vertices, sorted.
        dist (list): Distance from the nearest source, `INF` when unreachable.
        parent (list[int]): Predecessor in the shortest-path forest, -1 at sources and unreached vertices.
        root (list[int]): Source each vertex hangs from, -1 when unreachable.
    """

    sources: tuple[int, ...]
    dist: list
    parent: list[int]
    root: list[int]


def multi_source_dijkstra(g: Graph, sources: Iterable[int]) -> DistanceArray:
    n = g.n
    adjacency = g.adjacency
    dist: list = [INF] * n
    root = [-1] * n
    parent = [-1] * n
    srcs = tuple(sorted(set(sources)))
    heap = []
    for s in srcs:
        dist[s] = 0
        root[s] = s
        heap.append((0, s, s))
    heapq.heapify(heap)

    while heap:
        d, r, u = heapq.heappop(heap)
        if d != dist[u] or r != root[u]:
            continue
        for v, w in adjacency[u]:
            nd = d + w
            dv = dist[v]
            if nd < dv or (nd == dv and r < root[v]):
                dist[v] = nd
                root[v] = r
                parent[v] = u
                heapq.heappush(heap, (nd, r, v))
    return DistanceArray(srcs, dist, parent, root)


def dijkstra(g: Graph, source: int) -> DistanceArray:
    """Exact single-source distances and a shortest-path tree.

    Examples:
        >>> p3 = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
        >>> dijkstra(p3, 0).dist
        [0, 1, 2]
    """
    return multi_source_dijkstra(g, (source,))


@dataclass(frozen=True)
class SampleAssignment:
    """Nearest sampled vertex of every vertex.

    Attributes:
        samples (tuple[int, ...]): The sample set S, sorted.
        nearest (tuple[int, ...]): p_S(u) for every u.
        distance (tuple[int, ...]): d_G(u, p_S(u)) for every u.
        exponent (Fraction | None): Sampling exponent i/k, when S was drawn by `sample_vertices`.
        probability (float | None): Inclusion probability p = n^(-i/k).
    """

    samples: tuple[int, ...]
    nearest: tuple[int, ...]
    distance: tuple[int, ...]
    exponent: Fraction | None = None
    probability: float | None = None

    @property
    def n(self) -> int:
        return len(self.nearest)

    def sample_index(self) -> dict[int, int]:
        """Position of each sample in `samples`."""
        return {s: i for i, s in enumerate(self.samples)}


def nearest_sample(g: Graph, samples: Iterable[int], exponent: Fraction | None = None, probability: float | None = None) -> SampleAssignment:
    """Compute p_S and d_G(u, p_S(u)) for all u with one multi-source Dijkstra from S.

    Ties are resolved toward the smallest sample id.

    Raises:
        ParameterError: S is empty.
    """
    run = multi_source_dijkstra(g, samples)
    if not run.sources:
        raise ParameterError("nearest_sample needs a non-empty sample set")
    if any(r < 0 for r in run.root):
        raise ParameterError("some vertex cannot reach the sample set; validate connectivity first")
    return SampleAssignment(run.sources, tuple(run.root), tuple(run.dist), exponent, probability)


@dataclass(frozen=True)
class SparsifiedGraph:
    """G_S: at every vertex only the incident edges lighter than its distance to the nearest sample."""

    graph: Graph
    assignment: SampleAssignment

    @property
    def m(self) -> int:
        return self.graph.m


def build_sparsified(g: Graph, sa: SampleAssignment) -> SparsifiedGraph:
    """E_S = union over v of E_S(v), with E_S(v) = {(v, x, w) in E : w < d_S[v]}.

    Examples:
        >>> p3 = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
        >>> list(build_sparsified(p3, nearest_sample(p3, [2])).graph.edges())
        [(0, 1, 1)]
    """
    d_s = sa.distance
    kept = [(u, v, w) for u, v, w in g.edges() if w < d_s[u] or w < d_s[v]]
    return SparsifiedGraph(g.with_edges(kept), sa)


@dataclass(frozen=True)
class SamplingOutcome:
    """Outcome of the resampling loop.

    Attributes:
        assignment (SampleAssignment): Nearest-sample assignment of the chosen round.
        sparsified (SparsifiedGraph): G_S of the chosen round.
        rounds (int): Rounds drawn, the chosen one included.
        accepted (bool): Whether the chosen round met the acceptance predicate or came from the fallback.
    """

    assignment: SampleAssignment
    sparsified: SparsifiedGraph
    rounds: int
    accepted: bool

    @property
    def samples(self) -> tuple[int, ...]:
        return self.assignment.samples


def sample_vertices(g: Graph, exponent: Fraction, seed: int, round_cap: int = ROUND_CAP) -> SamplingOutcome:
    """Draw S with p = n^(-exponent), redrawing until |S| and |E_S| are within budget.

    A round is accepted when S is non-empty, p*n/2 <= |S| <= 2*p*n and |E_S| <= 4*n/p. Round r uses
    the generator derived from `(seed, "sample", r)`. After `round_cap` rejected rounds the round with
    the smallest |E_S| among those inside the |S| window is used, failing that the smallest |E_S| of any
    non-empty round, failing that a single uniformly drawn vertex.

    Args:
        g (Graph): Validated, connected graph.
        exponent (Fraction): i/k, in [0, 1].
        seed (int): Build seed.
        round_cap (int): Rounds before falling back.

    Returns:
        SamplingOutcome: The chosen S with its assignment and G_S.
    """
    exponent = Fraction(exponent)
    if not 0 <= exponent <= 1:
        raise ParameterError(f"sampling exponent {exponent} outside [0, 1]")
    n = g.n
    p = sampling_probability(n, exponent)
    target = p * n
    edge_budget = EDGE_BUDGET_FACTOR * n / p
    vertices = range(n)

    best_in_window: tuple[int, int, SampleAssignment, SparsifiedGraph] | None = None
    best_any: tuple[int, int, SampleAssignment, SparsifiedGraph] | None = None
    for round_ in range(round_cap):
        chosen = bernoulli_subset(make_rng(seed, "sample", round_), vertices, p)
        if not chosen:
            logger.debug("sampling round %d: empty sample", round_)
            continue
        sa = nearest_sample(g, chosen, exponent, p)
        sparsified = build_sparsified(g, sa)
        in_window = target / SAMPLE_WINDOW <= len(chosen) <= SAMPLE_WINDOW * target
        logger.debug("sampling round %d: |S|=%d |E_S|=%d (window %s)", round_, len(chosen), sparsified.m, in_window)
        if in_window and sparsified.m <= edge_budget:
            logger.info("sampled |S|=%d |E_S|=%d after %d round(s)", len(chosen), sparsified.m, round_ + 1)
            return SamplingOutcome(sa, sparsified, round_ + 1, True)
        candidate = (sparsified.m, round_, sa, sparsified)
        if in_window and (best_in_window is None or candidate[:2] < best_in_window[:2]):
            best_in_window = candidate
        if best_any is None or candidate[:2] < best_any[:2]:
            best_any = candidate

    fallback = best_in_window or best_any
    if fallback is None:
        lone = int(make_rng(seed, "sample", "fallback").integers(n))
        sa = nearest_sample(g, [lone], exponent, p)
        fallback = (0, round_cap, sa, build_sparsified(g, sa))
    _, round_, sa, sparsified = fallback
    logger.warning(
        "no sampling round accepted in %d rounds; using round %s with |S|=%d |E_S|=%d", round_cap, round_, len(sa.samples), sparsified.m
    )
    return SamplingOutcome(sa, sparsified, round_cap, False)
