"""
Ground truth: the all-pairs exact oracle, an independent Bellman-Ford cross-check, and the ball B_S(u).
"""

from __future__ import annotations

import logging

import networkx as nx
import numpy as np

from .exception import SizeGuardError
from .graph import Graph
from .sssp import SampleAssignment, dijkstra

logger = logging.getLogger(__name__)

EXACT_LIMIT = 4096
UNREACHABLE = -1


class ExactOracle:
    """All-pairs exact distances from n Dijkstra runs, usable wherever an oracle is expected.

    `table[u, v]` holds d(u, v), or -1 when v is unreachable from u.
    """

    stretch_bound = 1

    def __init__(self, table: np.ndarray) -> None:
        self.table = table

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def query(self, u: int, v: int) -> int:
        return int(self.table[u, v])

    def row(self, u: int) -> np.ndarray:
        return self.table[u]


def exact_oracle(g: Graph, limit: int = EXACT_LIMIT) -> ExactOracle:
    """Exact symmetric distance table with zero diagonal.

    Raises:
        SizeGuardError: n exceeds `limit`.

    Examples:
        >>> exact_oracle(Graph.from_edges(2, [(0, 1, 7)])).table.tolist()
        [[0, 7], [7, 0]]
    """
    if g.n > limit:
        raise SizeGuardError(f"exact oracle limited to n <= {limit}, got n={g.n}")
    table = np.full((g.n, g.n), UNREACHABLE, dtype=np.int64)
    for u in range(g.n):
        dist = dijkstra(g, u).dist
        table[u] = [UNREACHABLE if d == float("inf") else d for d in dist]
    table.setflags(write=False)
    return ExactOracle(table)


def to_networkx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_weighted_edges_from(g.edges())
    return nxg


def bellman_ford_table(g: Graph) -> np.ndarray:
    """All-pairs distances by Bellman-Ford (networkx), independent of this package's Dijkstra."""
    table = np.full((g.n, g.n), UNREACHABLE, dtype=np.int64)
    for u, lengths in nx.all_pairs_bellman_ford_path_length(to_networkx(g)):
        for v, d in lengths.items():
            table[u, v] = d
    return table


def cross_check(g: Graph, oracle: ExactOracle | None = None) -> list[tuple[int, int, int, int]]:
    """Entries where Dijkstra and Bellman-Ford disagree, as (u, v, dijkstra, bellman_ford)."""
    oracle = oracle or exact_oracle(g)
    reference = bellman_ford_table(g)
    mismatches = np.argwhere(oracle.table != reference)
    return [(int(u), int(v), int(oracle.table[u, v]), int(reference[u, v])) for u, v in mismatches]


def ball_B_S(g: Graph, sa: SampleAssignment, u: int, oracle: ExactOracle | None = None) -> set[int]:
    """{v : d(u, v) < d(u, p_S(u))}; empty for every sample u."""
    radius = sa.distance[u]
    if oracle is not None:
        row = oracle.row(u)
        return {int(v) for v in np.flatnonzero((row >= 0) & (row < radius))}
    return {v for v, d in enumerate(dijkstra(g, u).dist) if d < radius}
