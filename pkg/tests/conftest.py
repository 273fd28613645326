import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from weakcolor.graph import Graph

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


@st.composite
def graphs(draw, max_n=14, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if not pairs:
        return Graph.empty(n)
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(len(pairs), 3 * n)))
    return Graph.from_edges(n, chosen)


@st.composite
def colorings(draw, g: Graph, colors=3, partial=False):
    c = {}
    for v in range(g.n):
        if partial and not draw(st.booleans()):
            continue
        c[v] = draw(st.integers(1, colors))
    return c


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    return random.Random(12345)


def centered_graph(rng: random.Random, k: int, r: int, n_max: int = 60, extra: float = 0.03) -> Graph:
    """A graph whose vertex set lies within distance r of the centers
    0..k-1: trees of depth <= r hang off each centre, plus random chords
    (chords only shrink distances)."""
    depth = {c: 0 for c in range(k)}
    edges = set()
    n = k
    target = rng.randint(k, n_max) if r > 0 else k
    while n < target:
        u = rng.choice([v for v in depth if depth[v] < r])
        depth[n] = depth[u] + 1
        edges.add((u, n))
        n += 1
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < extra:
                edges.add((i, j))
    return Graph.from_edges(n, sorted(edges))
