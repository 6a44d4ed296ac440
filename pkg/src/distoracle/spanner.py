"""
Randomized cluster-based (2k'-1)-spanner with O(k' n^(1+1/k')) expected edges.

Phase one runs k'-1 clustering rounds. Every round samples the current clusters with probability
n^(-1/k'). A vertex outside the sampled clusters either joins its nearest sampled neighbor cluster
through the lightest edge to it, also keeping the lightest edge to every adjacent cluster reached by
a strictly lighter edge, or, when no sampled cluster is adjacent, keeps the lightest edge to every
adjacent cluster and retires. Edges a vertex has dealt with are removed from the working set, and
so are edges inside a cluster at the end of the round. Phase two connects every vertex to each
cluster still adjacent through the working set, again by the lightest edge.

"Lightest" compares (weight, neighbor id), a total order on the edges of one vertex.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .exception import ParameterError
from .graph import Graph, require_valid
from .rng import bernoulli_subset, make_rng, sampling_probability

logger = logging.getLogger(__name__)

_NONE = -1


@dataclass(frozen=True)
class SpannerSubgraph:
    """Spanning subgraph H of `base` with d_H(u, v) <= (2k'-1) d_G(u, v) for all u, v.

    Attributes:
        base (Graph): Input graph.
        graph (Graph): H itself, over the same vertex ids.
        k_prime (int): Stretch parameter k'.
    """

    base: Graph
    graph: Graph
    k_prime: int

    @property
    def stretch(self) -> int:
        return 2 * self.k_prime - 1

    @property
    def m(self) -> int:
        return self.graph.m

    def size_constant(self) -> float:
        """Measured C_H in |E_H| = C_H * k' * n^(1+1/k')."""
        n = max(self.base.n, 1)
        return self.m / (self.k_prime * n ** (1 + 1 / self.k_prime))


def _lightest_per_cluster(remaining: dict[int, int], cluster: list[int]) -> dict[int, tuple[int, int]]:
    lightest: dict[int, tuple[int, int]] = {}
    for x, w in remaining.items():
        c = cluster[x]
        key = (w, x)
        if c not in lightest or key < lightest[c]:
            lightest[c] = key
    return lightest


def build_spanner(g: Graph, k_prime: int, seed: int) -> SpannerSubgraph:
    """Build a (2k'-1)-spanner of `g`.

    Args:
        g (Graph): Validated, connected graph.
        k_prime (int): Stretch parameter, at least 1. k' = 1 returns `g` itself.
        seed (int): Seed for the cluster sampling.

    Returns:
        SpannerSubgraph: The spanner; deterministic for a given (g, k', seed).

    Raises:
        ParameterError: k' < 1.
    """
    if k_prime < 1:
        raise ParameterError(f"spanner parameter k' must be >= 1, got {k_prime}")
    require_valid(g)
    if k_prime == 1:
        return SpannerSubgraph(g, g, 1)

    n = g.n
    p = sampling_probability(n, Fraction(1, k_prime))
    remaining: list[dict[int, int]] = [dict(row) for row in g.adjacency]
    cluster = list(range(n))
    kept: dict[tuple[int, int], int] = {}

    def keep(u: int, v: int, w: int) -> None:
        kept[(u, v) if u < v else (v, u)] = w

    def drop_edges_to(v: int, c: int) -> None:
        for x in [x for x in remaining[v] if cluster[x] == c]:
            del remaining[v][x]
            del remaining[x][v]

    for round_ in range(1, k_prime):
        centers = sorted({c for c in cluster if c != _NONE})
        sampled = set(bernoulli_subset(make_rng(seed, "spanner", round_), centers, p))
        next_cluster = [_NONE] * n
        for v in range(n):
            c_v = cluster[v]
            if c_v == _NONE:
                continue
            if c_v in sampled:
                next_cluster[v] = c_v
                continue
            lightest = _lightest_per_cluster(remaining[v], cluster)
            joinable = [(key, c) for c, key in lightest.items() if c in sampled]
            if not joinable:
                for c, (w, x) in lightest.items():
                    keep(v, x, w)
                    drop_edges_to(v, c)
                continue
            join_key, join_c = min(joinable)
            keep(v, join_key[1], join_key[0])
            next_cluster[v] = join_c
            for c, (w, x) in lightest.items():
                if c != join_c and (w, x) < join_key:
                    keep(v, x, w)
                    drop_edges_to(v, c)
            drop_edges_to(v, join_c)

        cluster = next_cluster
        for v in range(n):
            c_v = cluster[v]
            if c_v == _NONE:
                continue
            for x in [x for x in remaining[v] if cluster[x] == c_v]:
                del remaining[v][x]
                del remaining[x][v]
        logger.debug("spanner round %d: %d sampled clusters, %d edges kept", round_, len(sampled), len(kept))

    for v in range(n):
        for w, x in _lightest_per_cluster(remaining[v], cluster).values():
            keep(v, x, w)

    h = g.with_edges((u, v, w) for (u, v), w in sorted(kept.items()))
    logger.info("spanner k'=%d: |E_H|=%d of |E|=%d", k_prime, h.m, g.m)
    return SpannerSubgraph(g, h, k_prime)
