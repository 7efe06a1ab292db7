import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import random_connected_edges  # noqa: E402

from discrimnet.graph import from_edges  # noqa: E402

C4 = [(0, 1), (1, 2), (2, 3), (3, 0)]
P3 = [(0, 1), (1, 2)]
STAR = [(0, 1), (0, 2), (0, 3)]
K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
# a-b, a-c, b-c, b-d, c-d with a=0, b=1, c=2, d=3
DIAMOND = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]


@pytest.fixture
def c4():
    return from_edges(4, C4)


@pytest.fixture
def p3():
    return from_edges(3, P3)


@pytest.fixture
def star():
    return from_edges(4, STAR)


@pytest.fixture
def k4():
    return from_edges(4, K4)


@pytest.fixture
def diamond():
    return from_edges(4, DIAMOND, labels=["a", "b", "c", "d"])


def oracle_graphs(count=100, seed=20240101):
    """The seeded family used for oracle equivalence: n in [5, 50], p in [0.1, 0.5]."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(5, 50)
        p = rng.uniform(0.1, 0.5)
        out.append((n, random_connected_edges(rng, n, p)))
    return out


@pytest.fixture(scope="session")
def oracle_family():
    return oracle_graphs()


@pytest.fixture
def write_file(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write


def synthetic_temporal(seed=0, n=60, p=0.06, positives=25):
    """Training edges first, then links closing the distance-2 pairs with most shortest paths.

    Returns a list of ``(u, v, t)`` rows.
    """
    from oracles import walk_count_all_pairs

    rng = random.Random(seed)
    edges = random_connected_edges(rng, n, p)
    dist, sigma = walk_count_all_pairs(n, edges)
    two_hop = [(sigma[u][v], u, v) for u in range(n) for v in range(u + 1, n) if dist[u][v] == 2]
    two_hop.sort(key=lambda x: (-x[0], x[1], x[2]))
    rows = [(u, v, t) for t, (u, v) in enumerate(rng.sample(edges, len(edges)))]
    t0 = len(rows)
    rows += [(u, v, t0 + i) for i, (_, u, v) in enumerate(two_hop[:positives])]
    return rows, len(edges)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
