"""
Weighted undirected graphs in compressed adjacency form, plus ingestion, writing, zero-edge contraction,
component extraction and validation.

Vertices are dense ids `0..n-1`; the labels found in the input file are kept in `Graph.labels`.
Weights are non-negative integers. Parallel edges collapse to their minimum weight and self-loops are
dropped when a graph is built, so every `Graph` is simple and symmetric by construction.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .exception import GraphFormatError, GraphSizeError, GraphValidationError, NegativeWeightError
from .paths import GraphFormat
from .result import Err, Ok, Result

logger = logging.getLogger(__name__)

INF = math.inf
# Largest distance the int64 accumulator may hold; n * max_weight must stay below it.
MAX_DISTANCE = (1 << 63) - 1
MAX_VERTICES = (1 << 31) - 1

Edge = tuple[int, int, int]


def _frozen(values, dtype=np.int64) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph.

    Attributes:
        indptr (np.ndarray): CSR row pointers, length n + 1.
        indices (np.ndarray): Neighbor ids, each undirected edge stored once per endpoint, sorted per row.
        weights (np.ndarray): Edge weights aligned with `indices`.
        labels (np.ndarray): Original vertex label of every dense id.
    """

    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    labels: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], labels: Sequence[int] | None = None) -> Graph:
        """Build a graph over vertices `0..n-1` from (u, v, w) triples.

        Self-loops are dropped and parallel edges keep their minimum weight.

        Raises:
            NegativeWeightError: A weight is negative.
            GraphSizeError: n exceeds the vertex id range, or n * max_weight overflows the accumulator.
        """
        if n < 0 or n > MAX_VERTICES:
            raise GraphSizeError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        best: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) references a vertex outside [0, {n})")
            if w < 0:
                raise NegativeWeightError(f"negative weight {w} on edge ({u}, {v})")
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            old = best.get(key)
            if old is None or w < old:
                best[key] = w

        max_weight = max(best.values(), default=0)
        if n * max_weight > MAX_DISTANCE:
            raise GraphSizeError(f"n * max_weight = {n * max_weight} exceeds the distance accumulator limit {MAX_DISTANCE}")

        m = len(best)
        src = np.empty(2 * m, dtype=np.int64)
        dst = np.empty(2 * m, dtype=np.int64)
        wts = np.empty(2 * m, dtype=np.int64)
        if m:
            pairs = np.array(list(best.keys()), dtype=np.int64).reshape(m, 2)
            ws = np.fromiter(best.values(), dtype=np.int64, count=m)
            src[:m], dst[:m] = pairs[:, 0], pairs[:, 1]
            src[m:], dst[m:] = pairs[:, 1], pairs[:, 0]
            wts[:m] = wts[m:] = ws
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        if labels is None:
            labels = np.arange(n, dtype=np.int64)
        elif len(labels) != n:
            raise GraphFormatError(f"{len(labels)} labels given for {n} vertices")
        return cls(_frozen(indptr), _frozen(dst[order]), _frozen(wts[order]), _frozen(labels))

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per-vertex `(neighbor, weight)` tuples as Python ints, the form the search loops iterate."""
        indptr = self.indptr.tolist()
        nbrs = self.indices.tolist()
        wts = self.weights.tolist()
        return tuple(tuple(zip(nbrs[indptr[u] : indptr[u + 1]], wts[indptr[u] : indptr[u + 1]])) for u in range(self.n))

    def neighbors(self, u: int) -> tuple[tuple[int, int], ...]:
        return self.adjacency[u]

    def edges(self) -> Iterator[Edge]:
        """Each undirected edge once, as (u, v, w) with u < v, in (u, v) order."""
        for u, row in enumerate(self.adjacency):
            for v, w in row:
                if u < v:
                    yield u, v, w

    def edge_weight(self, u: int, v: int) -> int | None:
        lo, hi = int(self.indptr[u]), int(self.indptr[u + 1])
        pos = lo + int(np.searchsorted(self.indices[lo:hi], v))
        if pos < hi and self.indices[pos] == v:
            return int(self.weights[pos])
        return None

    def with_edges(self, edges: Iterable[Edge]) -> Graph:
        """A graph over the same vertex set and labels holding only `edges`."""
        return Graph.from_edges(self.n, edges, self.labels)

    def same_structure(self, other: Graph) -> bool:
        """Equality up to label mapping: same dense ids, same edges and weights."""
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.weights, other.weights)
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.same_structure(other) and np.array_equal(self.labels, other.labels)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# ingestion and writing


def _parse_int(token: str, path: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"{what} {token!r} is not an integer", path, line_no) from None


def _read_edge_list(path: str) -> Graph:
    raw: list[Edge] = []
    with open(path, "r", encoding="utf8") as f:
        for line_no, line in enumerate(f, start=1):
            content = line.split("#", 1)[0].split()
            if not content:
                continue
            if len(content) != 3:
                raise GraphFormatError(f"expected 'u v w', got {line.strip()!r}", path, line_no)
            u = _parse_int(content[0], path, line_no, "vertex")
            v = _parse_int(content[1], path, line_no, "vertex")
            w = _parse_int(content[2], path, line_no, "weight")
            if w < 0:
                raise NegativeWeightError(f"negative weight {w}", path, line_no)
            raw.append((u, v, w))

    labels = sorted({x for u, v, _ in raw for x in (u, v)})
    if len(labels) > MAX_VERTICES:
        raise GraphSizeError(f"{len(labels)} vertices exceed the vertex id range")
    dense = {label: i for i, label in enumerate(labels)}
    return Graph.from_edges(len(labels), ((dense[u], dense[v], w) for u, v, w in raw), labels)


def _read_dimacs(path: str) -> Graph:
    n: int | None = None
    raw: list[Edge] = []
    with open(path, "r", encoding="utf8") as f:
        for line_no, line in enumerate(f, start=1):
            content = line.split()
            if not content or content[0] == "c":
                continue
            tag = content[0]
            if tag == "p":
                if n is not None:
                    raise GraphFormatError("duplicate problem line", path, line_no)
                if len(content) != 4 or content[1] != "sp":
                    raise GraphFormatError(f"expected 'p sp n m', got {line.strip()!r}", path, line_no)
                n = _parse_int(content[2], path, line_no, "vertex count")
                if n < 0 or n > MAX_VERTICES:
                    raise GraphSizeError(f"{path}:{line_no}: vertex count {n} outside [0, {MAX_VERTICES}]")
            elif tag == "a":
                if n is None:
                    raise GraphFormatError("arc before the problem line", path, line_no)
                if len(content) != 4:
                    raise GraphFormatError(f"expected 'a u v w', got {line.strip()!r}", path, line_no)
                u = _parse_int(content[1], path, line_no, "vertex")
                v = _parse_int(content[2], path, line_no, "vertex")
                w = _parse_int(content[3], path, line_no, "weight")
                if not (1 <= u <= n and 1 <= v <= n):
                    raise GraphFormatError(f"arc ({u}, {v}) outside [1, {n}]", path, line_no)
                if w < 0:
                    raise NegativeWeightError(f"negative weight {w}", path, line_no)
                raw.append((u - 1, v - 1, w))
            else:
                raise GraphFormatError(f"unknown line type {tag!r}", path, line_no)
    if n is None:
        raise GraphFormatError("missing problem line 'p sp n m'", path)
    return Graph.from_edges(n, raw, range(1, n + 1))


def load_graph(path: str, format: GraphFormat = "edge-list") -> Graph:
    """Read a graph file and remap its vertices to dense ids.

    Args:
        path (str): File to read.
        format (str): "dimacs-gr" (1-based "a u v w" arcs after a "p sp n m" header) or "edge-list"
            (whitespace separated "u v w", '#' comments).

    Returns:
        Graph: Dense-id graph; `labels` keeps the file's vertex ids.

    Raises:
        GraphFormatError: Parse error, reported with its line number.
        NegativeWeightError: A negative weight.
        GraphSizeError: Vertex count overflow.

    Examples:
        >>> g = load_graph("p3.txt")  # "0 1 1\\n1 2 1"
        >>> g.n, g.m
        (3, 2)
    """
    if format == "dimacs-gr":
        g = _read_dimacs(path)
    elif format == "edge-list":
        g = _read_edge_list(path)
    else:
        raise ValueError(f"Unknown graph format {format!r}")
    logger.info("loaded %s (%s): n=%d m=%d", path, format, g.n, g.m)
    return g


def write_graph(g: Graph, path: str, format: GraphFormat = "edge-list") -> None:
    """Write `g` so that `load_graph(path, format)` returns the same structure.

    The edge list carries the graph's labels; DIMACS always numbers vertices `1..n`. Isolated vertices
    cannot be expressed in an edge list.
    """
    with open(path, "w", encoding="utf8") as f:
        if format == "dimacs-gr":
            f.write(f"p sp {g.n} {g.m}\n")
            for u, v, w in g.edges():
                f.write(f"a {u + 1} {v + 1} {w}\n")
        elif format == "edge-list":
            labels = g.labels.tolist()
            for u, v, w in g.edges():
                f.write(f"{labels[u]} {labels[v]} {w}\n")
        else:
            raise ValueError(f"Unknown graph format {format!r}")


# ---------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class ReducedGraph:
    """A graph derived from a larger one, with the map from the larger graph's ids.

    `vertex_map[u]` is the id of input vertex `u` in `graph`, or -1 when `u` was dropped.
    """

    graph: Graph
    vertex_map: tuple[int, ...]

    def then(self, other: ReducedGraph) -> ReducedGraph:
        """Compose with a reduction of `self.graph`."""
        return ReducedGraph(other.graph, tuple(-1 if x < 0 else other.vertex_map[x] for x in self.vertex_map))

    @classmethod
    def identity(cls, g: Graph) -> ReducedGraph:
        return cls(g, tuple(range(g.n)))


def contract_zero_edges(g: Graph) -> ReducedGraph:
    """Merge every set of vertices joined by zero-weight paths into one representative.

    Groups are numbered in order of their smallest member, which also supplies the group's label.
    Edges inside a group vanish; edges between groups keep their minimum weight, so distances between
    representatives are unchanged.

    Examples:
        >>> p3 = Graph.from_edges(3, [(0, 1, 0), (1, 2, 1)])
        >>> contract_zero_edges(p3).vertex_map
        (0, 0, 1)
    """
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    zero_edges = 0
    for u, v, w in g.edges():
        if w == 0:
            zero_edges += 1
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    if zero_edges == 0:
        return ReducedGraph.identity(g)

    group_of_root: dict[int, int] = {}
    merge_map = []
    for u in range(g.n):
        merge_map.append(group_of_root.setdefault(find(u), len(group_of_root)))
    labels = [0] * len(group_of_root)
    for u in range(g.n - 1, -1, -1):
        labels[merge_map[u]] = int(g.labels[u])
    contracted = Graph.from_edges(len(group_of_root), ((merge_map[u], merge_map[v], w) for u, v, w in g.edges()), labels)
    logger.info("contracted %d zero-weight edges: n %d -> %d", zero_edges, g.n, contracted.n)
    return ReducedGraph(contracted, tuple(merge_map))


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    components = []
    adjacency = g.adjacency
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        members = [start]
        while queue:
            u = queue.popleft()
            for v, _ in adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    members.append(v)
                    queue.append(v)
        components.append(sorted(members))
    return components


def largest_component(g: Graph) -> ReducedGraph:
    """Induced subgraph on the largest connected component (ties: the one holding the smallest id)."""
    components = connected_components(g)
    if len(components) <= 1:
        return ReducedGraph.identity(g)
    keep = max(components, key=len)
    new_id = {u: i for i, u in enumerate(keep)}
    vertex_map = tuple(new_id.get(u, -1) for u in range(g.n))
    sub = Graph.from_edges(
        len(keep),
        ((new_id[u], new_id[v], w) for u, v, w in g.edges() if u in new_id),
        [int(g.labels[u]) for u in keep],
    )
    logger.info("kept largest component: %d of %d vertices (%d components)", sub.n, g.n, len(components))
    return ReducedGraph(sub, vertex_map)


@dataclass(frozen=True)
class ValidationReport:
    n: int
    m: int
    connected: bool
    symmetric: bool
    positive: bool
    components: int
    problems: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.connected and self.symmetric and self.positive

    def summary(self) -> str:
        if self.passed:
            return f"ok (n={self.n}, m={self.m})"
        return "; ".join(self.problems)

    def as_result(self) -> Result[ValidationReport, str]:
        return Ok(self) if self.passed else Err(self.summary())


def validate_graph(g: Graph) -> ValidationReport:
    """Check connectivity, adjacency symmetry and weight positivity; never raises."""
    problems = []
    components = len(connected_components(g)) if g.n else 0
    connected = components == 1
    if not g.n:
        problems.append("empty graph (no vertices)")
    elif not connected:
        problems.append(f"disconnected ({components} components)")

    adjacency = g.adjacency
    symmetric = True
    for u, row in enumerate(adjacency):
        for v, w in row:
            if v == u or g.edge_weight(v, u) != w:
                symmetric = False
                problems.append(f"edge ({u}, {v}, {w}) has no mirror")
                break
        if not symmetric:
            break

    positive = bool(np.all(g.weights > 0))
    if not positive:
        problems.append(f"{int(np.count_nonzero(g.weights <= 0)) // 2} non-positive edge weights")
    return ValidationReport(g.n, g.m, connected, symmetric, positive, components, tuple(problems))


def require_valid(g: Graph) -> ValidationReport:
    """Validate `g` for an oracle builder; raise `GraphValidationError` on any failure."""
    report = validate_graph(g)
    if not report.passed:
        raise GraphValidationError(report)
    return report
