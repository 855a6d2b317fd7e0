import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hypercurv.hypergraph import build_hypergraph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def hypergraphs(draw, max_nodes=12, max_edges=15, max_size=5, min_size=1):
    n = draw(st.integers(min_value=1, max_value=max_nodes))
    m = draw(st.integers(min_value=0, max_value=max_edges))
    edges = []
    for _ in range(m):
        size = draw(st.integers(min_value=min(min_size, n), max_value=min(max_size, n)))
        edges.append(draw(st.lists(st.integers(0, n - 1), min_size=size, max_size=size, unique=True)))
    return build_hypergraph(n, edges)


def brute_neighbors(H):
    out = [set() for _ in range(H.n)]
    for e in H.edges:
        for v in e:
            out[v] |= set(e) - {v}
    return out


def random_measure_pair(rng, p, q):
    a = rng.integers(0, 6, p).astype(float)
    a[rng.integers(p)] += 1
    b = rng.integers(0, 6, q).astype(float)
    b[rng.integers(q)] += 1
    return a / a.sum(), b / b.sum()
