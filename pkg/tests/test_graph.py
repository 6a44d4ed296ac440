import numpy as np
import pytest
from hypothesis import given

from distoracle.exact import exact_oracle
from distoracle.exception import GraphFormatError, GraphSizeError, GraphValidationError, NegativeWeightError
from distoracle.graph import (
    MAX_DISTANCE,
    Graph,
    contract_zero_edges,
    largest_component,
    load_graph,
    require_valid,
    validate_graph,
    write_graph,
)

from .strategies import connected_graphs


def test_load_edge_list(write_text, p3):
    g = load_graph(write_text("p3.txt", "0 1 1\n1 2 1\n"), "edge-list")
    assert (g.n, g.m) == (3, 2)
    assert g == p3


def test_edge_list_comments_and_sparse_labels(write_text):
    g = load_graph(write_text("g.txt", "# header\n10 30 4  # trailing\n\n30 20 1\n"), "edge-list")
    assert g.labels.tolist() == [10, 20, 30]
    assert sorted(g.edges()) == [(0, 2, 4), (1, 2, 1)]


def test_negative_weight_rejected(write_text):
    with pytest.raises(NegativeWeightError) as info:
        load_graph(write_text("neg.txt", "0 1 -5\n"), "edge-list")
    assert info.value.line == 1


def test_parse_error_reports_line(write_text):
    with pytest.raises(GraphFormatError) as info:
        load_graph(write_text("bad.txt", "0 1 1\n1 x 2\n"), "edge-list")
    assert info.value.line == 2
    assert ":2:" in str(info.value)


def test_dimacs_matches_edge_list(write_text, p3):
    g = load_graph(write_text("p3.gr", "c a path\np sp 3 2\na 1 2 1\na 2 3 1\n"), "dimacs-gr")
    assert g.same_structure(p3)
    assert g.labels.tolist() == [1, 2, 3]


def test_dimacs_arcs_in_both_directions_collapse(write_text):
    g = load_graph(write_text("g.gr", "p sp 2 2\na 1 2 5\na 2 1 3\n"), "dimacs-gr")
    assert list(g.edges()) == [(0, 1, 3)]


@pytest.mark.parametrize(
    "content",
    ["a 1 2 1\n", "p sp 2 1\na 1 3 1\n", "p sp 2 1\np sp 2 1\n", "p max 2 1\n", "p sp 2 1\nx 1 2\n", ""],
)
def test_dimacs_errors(write_text, content):
    with pytest.raises(GraphFormatError):
        load_graph(write_text("bad.gr", content), "dimacs-gr")


def test_parallel_edges_and_self_loops():
    g = Graph.from_edges(3, [(0, 1, 5), (1, 0, 2), (2, 2, 1), (1, 2, 7)])
    assert list(g.edges()) == [(0, 1, 2), (1, 2, 7)]
    assert g.neighbors(1) == ((0, 2), (2, 7))
    assert g.edge_weight(2, 2) is None


def test_weight_cap():
    with pytest.raises(GraphSizeError):
        Graph.from_edges(3, [(0, 1, MAX_DISTANCE // 2)])


@given(connected_graphs(min_n=2))
def test_round_trip_edge_list(tmp_path_factory, g):
    path = str(tmp_path_factory.mktemp("rt") / "g.txt")
    write_graph(g, path, "edge-list")
    assert load_graph(path, "edge-list") == g


@given(connected_graphs())
def test_round_trip_dimacs(tmp_path_factory, g):
    path = str(tmp_path_factory.mktemp("rt") / "g.gr")
    write_graph(g, path, "dimacs-gr")
    assert load_graph(path, "dimacs-gr").same_structure(g)


def test_contract_path():
    reduced = contract_zero_edges(Graph.from_edges(3, [(0, 1, 0), (1, 2, 1)]))
    assert reduced.vertex_map == (0, 0, 1)
    assert list(reduced.graph.edges()) == [(0, 1, 1)]


def test_contract_without_zero_edges_is_identity(p3):
    reduced = contract_zero_edges(p3)
    assert reduced.graph is p3
    assert reduced.vertex_map == (0, 1, 2)


def test_contract_triangle_to_single_vertex():
    reduced = contract_zero_edges(Graph.from_edges(3, [(0, 1, 0), (1, 2, 0), (0, 2, 5)]))
    assert (reduced.graph.n, reduced.graph.m) == (1, 0)
    assert reduced.vertex_map == (0, 0, 0)


@given(connected_graphs(zero_weights=True, max_weight=3))
def test_contract_idempotent(g):
    once = contract_zero_edges(g).graph
    twice = contract_zero_edges(once)
    assert twice.graph == once
    assert twice.vertex_map == tuple(range(once.n))
    assert validate_graph(once).positive


@given(connected_graphs(zero_weights=True, max_weight=5))
def test_contract_preserves_distances(g):
    reduced = contract_zero_edges(g)
    before = exact_oracle(g).table
    after = exact_oracle(reduced.graph).table
    vm = np.array(reduced.vertex_map)
    assert np.array_equal(before, after[np.ix_(vm, vm)])


def test_validate_reports():
    report = validate_graph(Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)]))
    assert report.connected and report.positive and report.passed
    report = validate_graph(Graph.from_edges(4, [(0, 1, 1), (2, 3, 1)]))
    assert not report.connected
    assert report.components == 2
    assert report.as_result().is_err()
    report = validate_graph(Graph.from_edges(2, [(0, 1, 0)]))
    assert not report.positive


def test_validate_rejects_empty_graph(write_text):
    g = load_graph(write_text("empty.txt", "# no edges\n"))
    assert g.n == 0
    report = validate_graph(g)
    assert not report.passed
    assert report.summary() == "empty graph (no vertices)"
    with pytest.raises(GraphValidationError):
        require_valid(g)


def test_require_valid_raises():
    with pytest.raises(GraphValidationError) as info:
        require_valid(Graph.from_edges(4, [(0, 1, 1), (2, 3, 1)]))
    assert not info.value.report.connected


def test_largest_component():
    g = Graph.from_edges(5, [(0, 1, 1), (2, 3, 1), (3, 4, 2)], labels=[7, 8, 9, 10, 11])
    reduced = largest_component(g)
    assert reduced.vertex_map == (-1, -1, 0, 1, 2)
    assert reduced.graph.labels.tolist() == [9, 10, 11]
    assert list(reduced.graph.edges()) == [(0, 1, 1), (1, 2, 2)]
