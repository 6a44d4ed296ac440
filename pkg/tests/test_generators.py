import pytest

from distoracle.exception import ScenarioError
from distoracle.generators import FAMILIES, generate
from distoracle.graph import validate_graph


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 7, 50])
def test_connected_with_exact_size(family, n):
    g = generate(family, n, seed=4, max_weight=9)
    assert g.n == n
    assert validate_graph(g).passed
    assert all(1 <= w <= 9 for _, _, w in g.edges())


@pytest.mark.parametrize("family", FAMILIES)
def test_seeded(family):
    assert generate(family, 40, seed=1) == generate(family, 40, seed=1)


def test_gnm_density():
    g = generate("gnm", 100, seed=0, edge_exponent=1.5)
    assert g.m == 1000


def test_path_and_grid_shapes():
    assert generate("path", 5, seed=0).m == 4
    assert generate("grid", 9, seed=0).m == 12


def test_unknown_family():
    with pytest.raises(ScenarioError):
        generate("hypercube", 8, seed=0)
    with pytest.raises(ScenarioError):
        generate("path", 0, seed=0)
