from .audit import AuditReport, PairSample, SizeAudit, audit_size, audit_stretch
from .bench import Scenario, bench_run, fit_exponents
from .composite import BuildConfig, CompositeOracle, build_near_linear, build_oracle, build_plain_tz, build_small_k, build_warmup, composite_query
from .exact import ExactOracle, ball_B_S, exact_oracle
from .exception import (
    DistOracleError,
    GraphFormatError,
    GraphSizeError,
    GraphValidationError,
    NegativeWeightError,
    ParameterError,
    QueryError,
    ScenarioError,
    SerializationError,
    SizeGuardError,
    UnwrapError,
)
from .generators import generate
from .graph import INF, Graph, ReducedGraph, ValidationReport, contract_zero_edges, largest_component, load_graph, validate_graph, write_graph
from .params import ParamsNearLinear, ParamsSmallK, select_params_near_linear, select_params_small_k, warmup_spanner_parameter
from .result import Err, Ok, Result
from .serialize import deserialize, load_oracle, save_oracle, serialize
from .spanner import SpannerSubgraph, build_spanner
from .sssp import DistanceArray, SampleAssignment, SparsifiedGraph, build_sparsified, dijkstra, multi_source_dijkstra, nearest_sample, sample_vertices
from .tz import TZOracle, build_tz, tz_query
from .version import __version__

__all__ = [
    "__version__",
    "Result",
    "Ok",
    "Err",
    "INF",
    "Graph",
    "ReducedGraph",
    "ValidationReport",
    "load_graph",
    "write_graph",
    "contract_zero_edges",
    "largest_component",
    "validate_graph",
    "DistanceArray",
    "SampleAssignment",
    "SparsifiedGraph",
    "dijkstra",
    "multi_source_dijkstra",
    "nearest_sample",
    "sample_vertices",
    "build_sparsified",
    "SpannerSubgraph",
    "build_spanner",
    "TZOracle",
    "build_tz",
    "tz_query",
    "ParamsSmallK",
    "ParamsNearLinear",
    "select_params_small_k",
    "select_params_near_linear",
    "warmup_spanner_parameter",
    "BuildConfig",
    "CompositeOracle",
    "build_oracle",
    "build_plain_tz",
    "build_warmup",
    "build_small_k",
    "build_near_linear",
    "composite_query",
    "serialize",
    "deserialize",
    "save_oracle",
    "load_oracle",
    "ExactOracle",
    "exact_oracle",
    "ball_B_S",
    "PairSample",
    "AuditReport",
    "SizeAudit",
    "audit_stretch",
    "audit_size",
    "Scenario",
    "bench_run",
    "fit_exponents",
    "generate",
    "DistOracleError",
    "UnwrapError",
    "GraphFormatError",
    "NegativeWeightError",
    "GraphSizeError",
    "GraphValidationError",
    "ParameterError",
    "QueryError",
    "SerializationError",
    "ScenarioError",
    "SizeGuardError",
]
