import numpy as np
import pytest

from logforest.graph import (
    Edge,
    WeightedMultigraph,
    complete_graph,
    cycle_graph,
    path_graph,
    random_multigraph,
    star_graph,
)

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0].lstrip("C"))):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


def bowtie() -> WeightedMultigraph:
    """Two triangles sharing vertex 3."""
    return WeightedMultigraph(5, ((1, 2, 1), (2, 3, 1), (1, 3, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)))


def weighted_triangle() -> WeightedMultigraph:
    return WeightedMultigraph(3, ((1, 2, 1.0), (2, 3, 1.0), (1, 3, 0.25)))


CONSTRUCTED = {
    "P3": path_graph(3),
    "P4": path_graph(4),
    "K3": complete_graph(3),
    "K4": complete_graph(4),
    "S4": star_graph(4),
    "bowtie": bowtie(),
}


def random_connected(rng, n_max, n_min=2, extra_max=None):
    n = int(rng.integers(n_min, n_max + 1))
    extra = int(rng.integers(0, (extra_max if extra_max is not None else n) + 1))
    return random_multigraph(rng, n, n - 1 + extra)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def K2():
    return complete_graph(2)


@pytest.fixture
def K3():
    return complete_graph(3)


@pytest.fixture
def P3():
    return path_graph(3)


@pytest.fixture
def P4():
    return path_graph(4)


@pytest.fixture
def triangle():
    return weighted_triangle()


@pytest.fixture
def split3():
    """Three vertices, single edge (1, 2)."""
    return WeightedMultigraph(3, (Edge(1, 2, 1.0),))
