import numpy as np
import pytest

from geodim.geograph import Graph


@pytest.fixture
def k3():
    return Graph.complete(3)


@pytest.fixture
def path3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def star5():
    """Star with centre 0 and leaves 1..4."""
    return Graph.from_edges(5, [(0, i) for i in range(1, 5)])


def adjacency_matrix(g):
    A = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        A[u, v] = A[v, u] = 1
    return A


def random_graph(rng, n, p):
    A = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_edges(n, np.argwhere(A))


# (criterion, passed, detail) rows appended by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(ACCEPTANCE, key=lambda row: int(row[0].split()[0][2:])):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
