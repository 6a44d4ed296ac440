from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from distoracle.paths import infer_graph_format, pure_file_name, sibling_path
from distoracle.rng import bernoulli_subset, derive_seed, make_rng, sampling_probability


def test_derive_seed_is_stable_and_tag_sensitive():
    assert derive_seed(7, "levels", 0) == derive_seed(7, "levels", 0)
    assert derive_seed(7, "levels", 0) != derive_seed(7, "levels", 1)
    assert derive_seed(7, "levels") != derive_seed(7, "sample")
    assert derive_seed(7, "levels") != derive_seed(8, "levels")
    assert 0 <= derive_seed(-1, "x") < 2**64


def test_stream_independence():
    a = make_rng(3, "tz").random(5)
    make_rng(3, "spanner").random(100)
    assert np.array_equal(a, make_rng(3, "tz").random(5))


@pytest.mark.parametrize(
    "n, exponent, expected",
    [
        (1, Fraction(1, 2), 1.0),
        (0, Fraction(1, 3), 1.0),
        (100, Fraction(1, 2), 0.1),
        (1000, Fraction(1, 3), 0.1),
        (64, Fraction(0), 1.0),
    ],
)
def test_sampling_probability(n, exponent, expected):
    assert sampling_probability(n, exponent) == pytest.approx(expected, rel=1e-12)


@given(st.integers(2, 10**6), st.fractions(min_value=0, max_value=1, max_denominator=50))
def test_sampling_probability_is_a_probability(n, exponent):
    assert 0.0 < sampling_probability(n, exponent) <= 1.0


def test_bernoulli_subset_extremes():
    rng = make_rng(0, "t")
    assert bernoulli_subset(rng, [], 0.5) == []
    assert bernoulli_subset(rng, [4, 2, 9], 1.0) == [4, 2, 9]
    assert bernoulli_subset(rng, [4, 2, 9], 0.0) == []


def test_bernoulli_subset_keeps_order():
    kept = bernoulli_subset(make_rng(1, "t"), list(range(1000, 0, -1)), 0.3)
    assert kept == sorted(kept, reverse=True)
    assert 200 < len(kept) < 400


def test_pure_file_name():
    assert pure_file_name("/data/bench/results.csv") == "results"
    assert pure_file_name("grid.tar.gz") == "grid.tar"
    assert pure_file_name("road.gr", keep_extension=True) == "road.gr"
    assert pure_file_name("noext") == "noext"


@pytest.mark.parametrize(
    "name, expected",
    [("USA-road-d.NY.gr", "dimacs-gr"), ("g.DIMACS", "dimacs-gr"), ("p3.txt", "edge-list"), ("edges", "edge-list"), ("dir.gr/file", "edge-list")],
)
def test_infer_graph_format(name, expected):
    assert infer_graph_format(name) == expected


def test_sibling_path():
    assert sibling_path("out/bench.csv", ".fit.json") == "out/bench.fit.json"
    assert sibling_path("bench.csv", ".fit.json") == "bench.fit.json"
