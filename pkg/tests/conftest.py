import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "scripts" / "lambdastar"))

from graphs import Graph  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run full enumerations")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full enumeration, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def random_graph(rng: random.Random, n: int, p: float = 0.4, connected: bool = True) -> Graph:
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        graph = Graph.from_edges(n, edges)
        if not connected or graph.is_connected():
            return graph


def relabel(graph: Graph, perm):
    return Graph.from_edges(graph.n, [(perm[u], perm[v]) for u, v in graph.edges()])


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def corpus_dir():
    return ROOT / "data" / "corpus"
