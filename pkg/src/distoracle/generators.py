"""
Seeded connected graph families for benchmarks and tests.

Every generator returns a connected `Graph` on exactly n vertices with integer weights drawn uniformly
from [1, max_weight].
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Literal

import networkx as nx
import numpy as np

from .exception import ScenarioError
from .graph import Edge, Graph
from .rng import derive_seed, make_rng

logger = logging.getLogger(__name__)

Family = Literal["gnm", "grid", "preferential", "tree-chords", "path"]
FAMILIES: tuple[Family, ...] = ("gnm", "grid", "preferential", "tree-chords", "path")

DEFAULT_EDGE_EXPONENT = 1.5
DEFAULT_MAX_WEIGHT = 100


def _weighted(n: int, pairs: list[tuple[int, int]], rng: np.random.Generator, max_weight: int) -> Graph:
    weights = rng.integers(1, max_weight + 1, size=len(pairs))
    return Graph.from_edges(n, [(u, v, int(w)) for (u, v), w in zip(pairs, weights)])


def _random_tree(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Random recursive tree: vertex v attaches to a uniform earlier vertex."""
    if n < 2:
        return []
    order = rng.permutation(n)
    parents = [int(rng.integers(0, v)) for v in range(1, n)]
    return [(int(order[v]), int(order[p])) for v, p in zip(range(1, n), parents)]


def _add_random_edges(n: int, pairs: list[tuple[int, int]], extra: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    present = {(min(u, v), max(u, v)) for u, v in pairs}
    target = min(len(present) + extra, n * (n - 1) // 2)
    while len(present) < target:
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u != v:
            present.add((min(u, v), max(u, v)))
    return sorted(present)


def gnm_graph(n: int, seed: int, max_weight: int = DEFAULT_MAX_WEIGHT, edge_exponent: float = DEFAULT_EDGE_EXPONENT) -> Graph:
    """Connected G(n, m) with m ~ n^edge_exponent: a random spanning tree plus uniform extra edges."""
    rng = make_rng(seed, "gnm")
    m = min(max(n - 1, round(n**edge_exponent)), n * (n - 1) // 2)
    tree = _random_tree(n, rng)
    return _weighted(n, _add_random_edges(n, tree, m - len(tree), rng), rng, max_weight)


def tree_chords_graph(n: int, seed: int, max_weight: int = DEFAULT_MAX_WEIGHT, chords: int | None = None) -> Graph:
    """Random spanning tree plus `chords` extra edges (n // 8 by default, at least one)."""
    rng = make_rng(seed, "tree-chords")
    tree = _random_tree(n, rng)
    extra = max(1, n // 8) if chords is None else chords
    return _weighted(n, _add_random_edges(n, tree, extra, rng), rng, max_weight)


def grid_graph(n: int, seed: int, max_weight: int = DEFAULT_MAX_WEIGHT) -> Graph:
    """Row-major prefix of n vertices of a near-square 2-D grid."""
    rng = make_rng(seed, "grid")
    cols = max(1, math.isqrt(max(n - 1, 0)) + 1)
    rows = max(1, -(-n // cols))
    grid = nx.grid_2d_graph(rows, cols)
    kept = sorted(grid.nodes)[:n]
    sub = nx.convert_node_labels_to_integers(grid.subgraph(kept), ordering="sorted")
    return _weighted(n, sorted(sub.edges), rng, max_weight)


def preferential_graph(n: int, seed: int, max_weight: int = DEFAULT_MAX_WEIGHT, attach: int = 2) -> Graph:
    """Barabasi-Albert preferential attachment, `attach` edges per new vertex."""
    rng = make_rng(seed, "preferential")
    if n <= attach:
        return path_graph(n, seed, max_weight)
    ba = nx.barabasi_albert_graph(n, attach, seed=derive_seed(seed, "preferential", "networkx"))
    return _weighted(n, sorted((min(u, v), max(u, v)) for u, v in ba.edges), rng, max_weight)


def path_graph(n: int, seed: int, max_weight: int = DEFAULT_MAX_WEIGHT) -> Graph:
    rng = make_rng(seed, "path")
    return _weighted(n, [(v, v + 1) for v in range(n - 1)], rng, max_weight)


_GENERATORS: dict[str, Callable[..., Graph]] = {
    "gnm": gnm_graph,
    "grid": grid_graph,
    "preferential": preferential_graph,
    "tree-chords": tree_chords_graph,
    "path": path_graph,
}


def generate(family: str, n: int, seed: int, max_weight: int = DEFAULT_MAX_WEIGHT, edge_exponent: float = DEFAULT_EDGE_EXPONENT) -> Graph:
    """Dispatch on a family name.

    Raises:
        ScenarioError: Unknown family, n < 1 or max_weight < 1.
    """
    if family not in _GENERATORS:
        raise ScenarioError(f"unknown graph family {family!r}, expected one of {', '.join(FAMILIES)}")
    if n < 1 or max_weight < 1:
        raise ScenarioError(f"family {family}: need n >= 1 and max_weight >= 1, got n={n}, max_weight={max_weight}")
    if family == "gnm":
        g = gnm_graph(n, seed, max_weight, edge_exponent)
    else:
        g = _GENERATORS[family](n, seed, max_weight)
    logger.debug("generated %s graph: n=%d m=%d", family, g.n, g.m)
    return g
