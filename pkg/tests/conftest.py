import numpy as np
import pytest

from config import Settings
from utils.hypergraph import from_edges, parse_hypergraph

MIXED_EXAMPLE = "1 2 3 4\n4 5\n"


def random_hypergraph(rng, n, edge_count, max_size):
    """Distinct edges drawn uniformly by size, then by vertex subset"""
    edges = set()
    attempts = 0
    while len(edges) < edge_count and attempts < 50 * edge_count:
        size = int(rng.integers(2, max_size + 1))
        edges.add(tuple(sorted(int(v) + 1 for v in rng.choice(n, size=size, replace=False))))
        attempts += 1
    return from_edges(n, sorted(edges))


@pytest.fixture
def mixed():
    """Rank 4, co-rank 2 hypergraph: one 4-edge and one 2-edge sharing vertex 4"""
    return parse_hypergraph(MIXED_EXAMPLE)


@pytest.fixture
def k2():
    return from_edges(2, [(1, 2)])


@pytest.fixture
def path3():
    return from_edges(3, [(1, 2), (2, 3)])


@pytest.fixture
def triangle():
    return from_edges(3, [(1, 2), (2, 3), (1, 3)])


@pytest.fixture
def square():
    return from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


@pytest.fixture
def star():
    return from_edges(4, [(1, 2), (1, 3), (1, 4)])


@pytest.fixture
def complete_3_uniform():
    return from_edges(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])


@pytest.fixture
def nested():
    return from_edges(4, [(1, 2), (1, 2, 3, 4)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def settings():
    return Settings(threads=1, tol=1e-10, max_iterations=100000, dense_budget=10 ** 6, log_level='WARNING')


@pytest.fixture
def edge_file(tmp_path):
    def write(text, name='h.txt'):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return write
