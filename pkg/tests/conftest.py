import pytest
from hypothesis import settings

from distoracle.generators import generate
from distoracle.graph import Graph

settings.register_profile("default", max_examples=40, deadline=None)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile("default")


@pytest.fixture
def p3() -> Graph:
    return Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)])


@pytest.fixture
def write_text(tmp_path):
    def _write(name: str, content: str) -> str:
        path = tmp_path / name
        path.write_text(content, encoding="utf8")
        return str(path)

    return _write


@pytest.fixture
def random_graph():
    """Seeded connected graph of a bench family."""

    def _make(n: int, seed: int = 0, family: str = "gnm", max_weight: int = 100, edge_exponent: float = 1.5) -> Graph:
        return generate(family, n, seed, max_weight, edge_exponent)

    return _make
