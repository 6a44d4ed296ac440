import pytest

from distoracle.exception import UnwrapError
from distoracle.graph import Graph, validate_graph
from distoracle.params import select_params_near_linear
from distoracle.result import Err, Ok


def test_ok_accessors():
    r = Ok(3)
    assert r.is_ok() and not r.is_err()
    assert r.unwrap() == 3
    assert r.value == 3
    assert str(r) == "Ok(3)"
    with pytest.raises(UnwrapError):
        r.unwrap_err()


def test_err_accessors():
    r = Err("infeasible")
    assert r.is_err()
    assert r.error == "infeasible"
    assert str(r) == "Err(infeasible)"
    with pytest.raises(UnwrapError, match="infeasible"):
        r.unwrap()
    with pytest.raises(UnwrapError):
        _ = r.value


def test_equality_distinguishes_ok_and_err():
    assert Ok(1) == Ok(1)
    assert Ok(1) != Err(1)
    assert Ok(1) != 1


def test_parameter_selection_reports_infeasibility():
    assert select_params_near_linear(1).error.startswith("k=1")
    assert select_params_near_linear(3).is_ok()


def test_validation_result_carries_summary():
    disconnected = Graph.from_edges(4, [(0, 1, 1), (2, 3, 1)])
    assert validate_graph(disconnected).as_result() == Err("disconnected (2 components)")
    path = Graph.from_edges(2, [(0, 1, 1)])
    report = validate_graph(path)
    assert report.as_result() == Ok(report)
