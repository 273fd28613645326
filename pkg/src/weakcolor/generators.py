"""Instance generators: k-trees, grids, small hosts, the bipartite gadget,
and random lists/precolorings/glued decompositions for tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .decomposition import RootedTreeDecomposition
from .errors import InputError
from .graph import Graph, bfs, coloring_far_pair, girth, is_bipartite
from .legitimacy import ListAssignment


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph.from_edges(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def triangular_grid(n: int) -> Graph:
    """n x n grid, row-major, with the down-right diagonal in every cell."""
    if n < 1:
        raise InputError("grid side must be at least 1")
    idx = lambda i, j: i * n + j
    edges = []
    for i in range(n):
        for j in range(n):
            if j + 1 < n:
                edges.append((idx(i, j), idx(i, j + 1)))
            if i + 1 < n:
                edges.append((idx(i, j), idx(i + 1, j)))
            if i + 1 < n and j + 1 < n:
                edges.append((idx(i, j), idx(i + 1, j + 1)))
    return Graph.from_edges(n * n, edges)


def random_ktree(n: int, w: int, seed: int, *, drop: float = 0.0, window: int | None = None,
                 hub: bool = False) -> tuple[Graph, RootedTreeDecomposition]:
    """A random partial w-tree with a width-w decomposition.

    Each new vertex joins w vertices of an existing bag. ``window`` limits
    the choice to the most recent bags, which gives long, path-like graphs.
    With ``hub`` (w >= 2) vertex 0 stays in every bag but gets no new edges,
    so bags hold far-apart vertices. Each edge is then deleted with
    probability ``drop``.
    """
    if w < 1 or n < w + 1:
        raise InputError(f"need w >= 1 and n >= w+1, got n={n}, w={w}")
    rng = random.Random(seed)
    bags = [tuple(range(w + 1))]
    tree = []
    edges = {(i, j) for i in range(w + 1) for j in range(i + 1, w + 1)}
    for v in range(w + 1, n):
        lo = 0 if window is None else max(0, len(bags) - window)
        b = rng.randrange(lo, len(bags))
        base = list(bags[b])
        if hub and w >= 2:
            base.pop(rng.randrange(1, len(base)))
        else:
            base.pop(rng.randrange(len(base)))
        bags.append(tuple(sorted(base + [v])))
        tree.append((b, len(bags) - 1))
        edges.update((u, v) for u in base if not (hub and u == 0))
    kept = [e for e in sorted(edges) if not (drop and rng.random() < drop)]
    g = Graph.from_edges(n, kept)
    td = RootedTreeDecomposition.build(0, range(len(bags)), tree, dict(enumerate(bags)))
    return g, td


def random_lists(n: int, m: int, palette: int | list[int], rng: random.Random) -> ListAssignment:
    pal = list(range(1, palette + 1)) if isinstance(palette, int) else sorted(palette)
    return ListAssignment(tuple(tuple(sorted(rng.sample(pal, m))) for _ in range(n)), tuple(pal))


def ball_painted_precoloring(g: Graph, lists: ListAssignment, k: int, rng: random.Random,
                             balls: int = 3) -> dict[int, int]:
    """Paint a few balls of radius k//2, each in one color from its centre's
    list. Balls that would merge into a component of weak diameter > k are
    skipped, so the result always has weak diameter <= k."""
    c: dict[int, int] = {}
    if g.n == 0:
        return c
    for _ in range(balls):
        centre = rng.randrange(g.n)
        col = rng.choice(lists[centre])
        trial = dict(c)
        for v in bfs(g, [centre], k // 2):
            if v not in trial and col in lists[v]:
                trial[v] = col
        if coloring_far_pair(g, trial, k) is None:
            c = trial
    return c


def glued_cliques(p: int, torsos: int, size: int, rng: random.Random,
                  density: float = 0.7, chain: bool = False) -> tuple[Graph, RootedTreeDecomposition]:
    """Random bags of at most ``size`` vertices glued along p shared
    vertices, each bag filled with random edges. With ``chain`` every bag
    hangs off the previous one, which gives long thin graphs."""
    if size < p + 1:
        raise InputError("bag size must exceed the adhesion")
    bags = [list(range(rng.randint(p + 1, size)))]
    nxt = len(bags[0])
    tree = []
    for _ in range(torsos - 1):
        b = len(bags) - 1 if chain else rng.randrange(len(bags))
        shared = rng.sample(bags[b], p)
        fresh = list(range(nxt, nxt + rng.randint(1, size - p)))
        nxt += len(fresh)
        bags.append(shared + fresh)
        tree.append((b, len(bags) - 1))
    edges = set()
    for bag in bags:
        for i, a in enumerate(bag):
            for c in bag[i + 1:]:
                if rng.random() < density:
                    edges.add((min(a, c), max(a, c)))
    g = Graph.from_edges(nxt, sorted(edges))
    td = RootedTreeDecomposition.build(0, range(len(bags)), tree, dict(enumerate(bags)))
    return g, td


@dataclass(frozen=True)
class GadgetOutput:
    graph: Graph
    lists: ListAssignment
    bipartition: tuple[tuple[int, ...], tuple[int, ...]]
    provenance: dict[int, tuple]
    host_degree: int
    k: int


def build_bipartite_gadget(h: Graph, k: int) -> GadgetOutput:
    """Glue k^k typed copies of the subdivided host so that every
    list-coloring inherits a long monochromatic cycle from the host.

    Vertex v*k + (i-1) is the identified vertex q*_{v,i}, with list
    {(i-1)k+1, ..., ik}. Each copy of host edge e for a type t follows,
    adjacent to q*_{u,i} and q*_{v,i} for every i, with list set(t).
    """
    if k < 1:
        raise InputError("k must be at least 1")
    degs = {h.degree(v) for v in range(h.n)}
    if len(degs) != 1:
        raise InputError("host graph must be regular")
    d = degs.pop()
    if girth(h) < 4:
        raise InputError("host graph must have girth at least 4")
    intervals = [tuple(range((i - 1) * k + 1, i * k + 1)) for i in range(1, k + 1)]
    types = list(product(*intervals))
    host_edges = list(h.edges)
    nq = h.n * k
    lists: list[tuple[int, ...]] = [intervals[i] for v in range(h.n) for i in range(k)]
    prov: dict[int, tuple] = {v * k + i: ("q", v, i + 1) for v in range(h.n) for i in range(k)}
    edges = []
    for ti, t in enumerate(types):
        for ei, (a, b) in enumerate(host_edges):
            x = nq + ti * len(host_edges) + ei
            lists.append(tuple(sorted(set(t))))
            prov[x] = ("edge", (a, b), t)
            for i in range(k):
                edges.append((x, a * k + i))
                edges.append((x, b * k + i))
    g = Graph.from_edges(nq + len(types) * len(host_edges), edges)
    side = (tuple(range(nq)), tuple(range(nq, g.n)))
    palette = tuple(range(1, k * k + 1))
    return GadgetOutput(g, ListAssignment(tuple(lists), palette), side, prov, d, k)


def check_gadget(go: GadgetOutput) -> list[str]:
    """Structural invariants of a gadget; returns the failed ones."""
    bad = []
    g, k, d = go.graph, go.k, go.host_degree
    a, b = go.bipartition
    sa = set(a)
    if set(a) | set(b) != set(range(g.n)) or sa & set(b):
        bad.append("bipartition does not partition the vertices")
    if any((u in sa) == (v in sa) for u, v in g.edges):
        bad.append("an edge lies inside one side")
    if is_bipartite(g) is None:
        bad.append("graph is not bipartite")
    if g.max_degree() > d * k ** k:
        bad.append(f"max degree {g.max_degree()} exceeds {d * k ** k}")
    if any(len(l) != k for l in go.lists.lists):
        bad.append("some list does not have size k")
    if any(g.degree(v) != 2 * k for v in b):
        bad.append("an edge copy does not have degree 2k")
    if any(g.degree(v) != d * k ** k for v in a):
        bad.append("an identified host vertex does not have degree d*k^k")
    return bad
