"""
Composite oracles: warm-up, small-k and near-linear, plus the plain Thorup-Zwick oracle in the same
container.

The small-k and near-linear oracles answer a query with the smaller of two estimates:

    d~1(u, v) = Thorup-Zwick estimate over G_S
    d~2(u, v) = d(u, p_S(u)) + far(p_S(u), p_S(v)) + d(v, p_S(v))

where `far` is an exact S x S table of spanner distances (small-k) or a restricted Thorup-Zwick oracle
over the spanner (near-linear).
"""

from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator, Literal

import numpy as np

from .exception import ParameterError, QueryError
from .graph import INF, Graph, ReducedGraph, contract_zero_edges, largest_component, require_valid
from .params import ParamMode, select_params_near_linear, select_params_small_k, warmup_spanner_parameter
from .rng import derive_seed
from .spanner import build_spanner
from .sssp import SampleAssignment, dijkstra, sample_vertices
from .tz import TZOracle, build_tz, tz_query

logger = logging.getLogger(__name__)

OracleKind = Literal["tz", "warmup", "small-k", "near-linear"]
ORACLE_KINDS: tuple[OracleKind, ...] = ("tz", "warmup", "small-k", "near-linear")


@dataclass(frozen=True)
class BuildConfig:
    """Everything a build depends on besides the graph.

    Attributes:
        kind (str): "tz", "warmup", "small-k" or "near-linear".
        k (int): Stretch parameter; the small-k and near-linear oracles have stretch 2k-1.
        epsilon (Fraction): Warm-up spanner accuracy.
        kappa (int | None): Level count of a plain tz oracle; defaults to k.
        param_mode (str): Near-linear parameter rule, "paper-c" or "large-k".
        seed (int): Root seed of every random choice.
    """

    kind: OracleKind = "small-k"
    k: int = 3
    epsilon: Fraction = Fraction(1)
    kappa: int | None = None
    param_mode: ParamMode = "paper-c"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ORACLE_KINDS:
            raise ParameterError(f"unknown oracle kind {self.kind!r}; expected one of {', '.join(ORACLE_KINDS)}")
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))


class _Stages:
    """Wall-clock seconds per build stage."""

    def __init__(self) -> None:
        self.seconds: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.seconds[name] = time.perf_counter() - start
            logger.info("stage %s: %.3fs", name, self.seconds[name])


@dataclass(frozen=True, eq=False)
class CompositeOracle:
    """A built oracle of any kind.

    Attributes:
        kind (str): Kind actually built (after any fallback).
        k (int): Stretch parameter of the build (kappa for a plain tz oracle).
        inner (TZOracle): Oracle over G_S (small-k, near-linear), the spanner (warmup) or the graph (tz).
        assignment (SampleAssignment | None): p_S and d_S, for small-k and near-linear.
        far_table (np.ndarray | None): |S| x |S| exact spanner distances, rows and columns in `assignment.samples` order.
        far_oracle (TZOracle | None): Restricted oracle over the spanner w.r.t. S (near-linear).
        stretch_bound (int): Certified stretch of every answer.
        params (dict): Parameter record (k', i, kappa, ...).
        metadata (dict): Seed, sizes, config, fallbacks.
        labels (tuple[int, ...]): Labels of the input graph's vertices.
        vertex_map (tuple[int, ...]): Input vertex id -> built vertex id, -1 when dropped.
        timings (dict): Wall-clock seconds per build stage. Not serialized, so an oracle file depends only on
            the graph and the build config.
    """

    kind: OracleKind
    k: int
    inner: TZOracle
    stretch_bound: int
    assignment: SampleAssignment | None = None
    far_table: np.ndarray | None = None
    far_oracle: TZOracle | None = None
    params: dict[str, Any] = field(default_factory=dict)
    metadata: dict[str, Any] = field(default_factory=dict)
    labels: tuple[int, ...] = ()
    vertex_map: tuple[int, ...] = ()
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.inner.n

    @property
    def build_seconds(self) -> float:
        return sum(self.timings.values())

    @cached_property
    def _sample_index(self) -> dict[int, int]:
        return self.assignment.sample_index() if self.assignment is not None else {}

    @cached_property
    def _label_index(self) -> dict[int, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def far_distance(self, p: int, q: int):
        """Spanner distance estimate between two samples."""
        if self.far_table is not None:
            index = self._sample_index
            return int(self.far_table[index[p], index[q]])
        assert self.far_oracle is not None
        return tz_query(self.far_oracle, p, q)

    def estimates(self, u: int, v: int) -> tuple[Any, Any]:
        """(d~1, d~2) for a pair; d~2 is `INF` for kinds without samples."""
        self._check_vertex(u)
        self._check_vertex(v)
        d1 = tz_query(self.inner, u, v)
        if self.assignment is None:
            return d1, INF
        nearest, d_s = self.assignment.nearest, self.assignment.distance
        d2 = d_s[u] + self.far_distance(nearest[u], nearest[v]) + d_s[v]
        return d1, d2

    def query(self, u: int, v: int):
        return composite_query(self, u, v)

    def query_labels(self, label_u: int, label_v: int):
        """Query by the input graph's own vertex labels."""
        return self.query(self._built_id(label_u), self._built_id(label_v))

    def _built_id(self, label: int) -> int:
        if label not in self._label_index:
            raise QueryError(f"unknown vertex label {label}")
        built = self.vertex_map[self._label_index[label]]
        if built < 0:
            raise QueryError(f"vertex label {label} is outside the component the oracle was built on")
        return built

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise QueryError(f"vertex {u} outside [0, {self.n})")

    def entry_counts(self) -> dict[str, int]:
        """Stored entries by part; `total` is their sum."""
        counts = {
            "bunches": self.inner.bunch_entries(),
            "pivots": self.inner.pivot_entries(),
            "samples": 2 * self.assignment.n if self.assignment is not None else 0,
            "far_cells": int(self.far_table.size) if self.far_table is not None else 0,
            "far_bunches": self.far_oracle.bunch_entries() if self.far_oracle is not None else 0,
            "far_pivots": self.far_oracle.pivot_entries() if self.far_oracle is not None else 0,
        }
        counts["total"] = sum(counts.values())
        return counts


def composite_query(o: CompositeOracle, u: int, v: int):
    """min(d~1, d~2): never below d(u, v), at most `o.stretch_bound` * d(u, v). Symmetric in (u, v)."""
    d1, d2 = o.estimates(u, v)
    return d1 if d1 <= d2 else d2


def _finish(oracle: CompositeOracle, g: Graph, stages: _Stages, seed: int, **extra: Any) -> CompositeOracle:
    metadata = {
        "seed": seed,
        "n": g.n,
        "m": g.m,
        **extra,
        **oracle.metadata,
    }
    return replace(
        oracle, metadata=metadata, labels=tuple(g.labels.tolist()), vertex_map=tuple(range(g.n)), timings=dict(stages.seconds)
    )


def build_plain_tz(g: Graph, kappa: int, seed: int) -> CompositeOracle:
    """A plain Thorup-Zwick oracle over `g` with stretch 2*kappa - 1."""
    require_valid(g)
    stages = _Stages()
    with stages.stage("tz"):
        inner = build_tz(g, kappa, derive_seed(seed, "tz"))
    oracle = CompositeOracle("tz", kappa, inner, inner.stretch_bound, params={"kappa": inner.kappa, "kappa_requested": kappa})
    return _finish(oracle, g, stages, seed, kind="tz")


def build_warmup(g: Graph, k: int, epsilon: Fraction, seed: int) -> CompositeOracle:
    """Thorup-Zwick oracle with k levels on top of a spanner of stretch 2t_eps - 1 <= ceil(1/eps) + 1.

    Answers have stretch at most (2k-1)(2t_eps-1) over `g`.
    """
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    require_valid(g)
    t_eps = warmup_spanner_parameter(epsilon)
    stages = _Stages()
    with stages.stage("spanner"):
        spanner = build_spanner(g, t_eps, derive_seed(seed, "spanner"))
    with stages.stage("tz"):
        inner = build_tz(spanner.graph, k, derive_seed(seed, "tz"))
    oracle = CompositeOracle(
        "warmup",
        k,
        inner,
        inner.stretch_bound * spanner.stretch,
        params={"epsilon": str(Fraction(epsilon)), "t_eps": t_eps, "kappa": inner.kappa},
        metadata={"spanner_edges": spanner.m},
    )
    return _finish(oracle, g, stages, seed, kind="warmup")


def build_small_k(g: Graph, k: int, seed: int) -> CompositeOracle:
    """Stretch 2k-1 oracle: TZ over G_S plus exact S x S spanner distances, for k >= 3.

    Raises:
        ParameterError: k < 3.
    """
    params = select_params_small_k(k)
    require_valid(g)
    stages = _Stages()
    with stages.stage("sample"):
        sampling = sample_vertices(g, params.exponent, derive_seed(seed, "sample"))
    with stages.stage("tz"):
        inner = build_tz(sampling.sparsified.graph, k, derive_seed(seed, "tz"))
    with stages.stage("spanner"):
        spanner = build_spanner(g, params.k_prime, derive_seed(seed, "spanner"))
    samples = sampling.samples
    with stages.stage("far"):
        table = np.empty((len(samples), len(samples)), dtype=np.int64)
        for row, s in enumerate(samples):
            dist = dijkstra(spanner.graph, s).dist
            table[row] = [dist[t] for t in samples]
    table.setflags(write=False)

    oracle = CompositeOracle(
        "small-k",
        k,
        inner,
        2 * k - 1,
        assignment=sampling.assignment,
        far_table=table,
        params={"k_prime": params.k_prime, "i": str(params.i), "far_stretch": params.far_stretch},
        metadata={
            "samples": len(samples),
            "sparsified_edges": sampling.sparsified.m,
            "sampling_rounds": sampling.rounds,
            "sampling_accepted": sampling.accepted,
            "spanner_edges": spanner.m,
        },
    )
    return _finish(oracle, g, stages, seed, kind="small-k")


def build_near_linear(g: Graph, k: int, seed: int, mode: ParamMode = "paper-c") -> CompositeOracle:
    """Stretch 2k-1 oracle: TZ over G_S plus a restricted TZ oracle over the spanner w.r.t. S.

    When no feasible parameters exist for k, builds the small-k oracle (k >= 3) or a plain tz oracle
    with kappa = k instead, and records the reason under `metadata["fallback"]`.
    """
    selected = select_params_near_linear(k, mode)
    if selected.is_err():
        reason = selected.error
        fallback = build_small_k(g, k, seed) if k >= 3 else build_plain_tz(g, max(k, 1), seed)
        logger.warning("near-linear parameters infeasible (%s); built %s instead", reason, fallback.kind)
        metadata = {**fallback.metadata, "requested_kind": "near-linear", "fallback": reason}
        return replace(fallback, metadata=metadata)

    params = selected.value
    require_valid(g)
    stages = _Stages()
    with stages.stage("sample"):
        sampling = sample_vertices(g, params.exponent, derive_seed(seed, "sample"))
    with stages.stage("tz"):
        inner = build_tz(sampling.sparsified.graph, k, derive_seed(seed, "tz"))
    with stages.stage("spanner"):
        spanner = build_spanner(g, params.k_prime, derive_seed(seed, "spanner"))
    with stages.stage("far"):
        far = build_tz(spanner.graph, params.kappa, derive_seed(seed, "far"), restriction=sampling.samples)

    oracle = CompositeOracle(
        "near-linear",
        k,
        inner,
        2 * k - 1,
        assignment=sampling.assignment,
        far_oracle=far,
        params={
            "mode": params.mode,
            "c": str(params.c),
            "kappa": params.kappa,
            "i": str(params.i),
            "k_prime": params.k_prime,
            "far_stretch": params.far_stretch,
        },
        metadata={
            "samples": len(sampling.samples),
            "sparsified_edges": sampling.sparsified.m,
            "sampling_rounds": sampling.rounds,
            "sampling_accepted": sampling.accepted,
            "spanner_edges": spanner.m,
        },
    )
    return _finish(oracle, g, stages, seed, kind="near-linear")


def prepare_graph(g: Graph, keep_largest_component: bool = False) -> ReducedGraph:
    """Contract zero-weight edges, then optionally keep only the largest component."""
    reduced = contract_zero_edges(g)
    if keep_largest_component:
        reduced = reduced.then(largest_component(reduced.graph))
    return reduced


def build_oracle(g: Graph, config: BuildConfig, keep_largest_component: bool = False) -> CompositeOracle:
    """Normalize `g` and build the oracle `config` describes.

    The returned oracle answers `query_labels` on `g`'s labels; `query` takes ids of the normalized graph.
    """
    reduced = prepare_graph(g, keep_largest_component)
    built = reduced.graph
    if config.kind == "tz":
        oracle = build_plain_tz(built, config.kappa or config.k, config.seed)
    elif config.kind == "warmup":
        oracle = build_warmup(built, config.k, config.epsilon, config.seed)
    elif config.kind == "small-k":
        oracle = build_small_k(built, config.k, config.seed)
    else:
        oracle = build_near_linear(built, config.k, config.seed, config.param_mode)
    config_record = {**asdict(config), "epsilon": str(config.epsilon)}
    metadata = {**oracle.metadata, "config": config_record, "largest_component": keep_largest_component}
    return replace(oracle, metadata=metadata, labels=tuple(g.labels.tolist()), vertex_map=reduced.vertex_map)
