from hypothesis import strategies as st

from distoracle.graph import Graph

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 24, max_weight: int = 20, zero_weights: bool = False, extra_edges: bool = True) -> Graph:
    """A random spanning tree plus random extra edges; weights in [1, max_weight] (or [0, ...] with zero_weights)."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(v, draw(st.integers(min_value=0, max_value=v - 1))) for v in range(1, n)]
    if extra_edges and n > 1:
        vertex = st.integers(min_value=0, max_value=n - 1)
        pairs += draw(st.lists(st.tuples(vertex, vertex), max_size=2 * n))
    low = 0 if zero_weights else 1
    weights = draw(st.lists(st.integers(min_value=low, max_value=max_weight), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [(u, v, w) for (u, v), w in zip(pairs, weights)])


def trees(min_n: int = 2, max_n: int = 24, max_weight: int = 20):
    return connected_graphs(min_n=min_n, max_n=max_n, max_weight=max_weight, extra_edges=False)
