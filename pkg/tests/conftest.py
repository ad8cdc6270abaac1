import sys

import numpy as np
import pytest

from steklov_cayley.cayley import free_abelian
from steklov_cayley.families import induced, random_connected_subset
from steklov_cayley.graph_boundary import GraphWithBoundary


def path_bib():
    """b - i - b with the interior vertex in the middle (vertex order b, i, b)."""
    return GraphWithBoundary.from_edges(3, [(0, 1), (1, 2)], [0, 2])


def star_k14():
    """Center 0 interior, leaves 1..4 boundary."""
    return GraphWithBoundary.from_edges(5, [(0, k) for k in range(1, 5)], [1, 2, 3, 4])


def random_z2_graphs(count, max_size, seed):
    host = free_abelian(2)
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        size = int(rng.integers(1, max_size + 1))
        out.append(induced(host, random_connected_subset(host, size, rng)))
    return out


@pytest.fixture
def path():
    return path_bib()


@pytest.fixture
def star():
    return star_k14()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
