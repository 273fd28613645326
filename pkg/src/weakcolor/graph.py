"""Simple undirected graphs with dense integer ids, plus distance and
weak-diameter measurements.

Distances are ints, with ``INFINITE`` (a float infinity) for unreachable
pairs, so ordinary comparisons work without special cases.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InputError

INFINITE = math.inf

Coloring = Mapping[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]], *, strict: bool = True) -> "Graph":
        """Build a graph; with ``strict`` duplicate edges are rejected,
        otherwise silently merged. Loops are always rejected."""
        if not isinstance(n, int) or n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {n!r}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = tuple(e)
            for x in (u, v):
                if not isinstance(x, int) or not 0 <= x < n:
                    raise InputError(f"edge ({u}, {v}) has invalid endpoint {x!r}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                if strict:
                    raise InputError(f"duplicate edge ({u}, {v})")
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(n, tuple(() for _ in range(n)))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def adjsets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjsets[u]

    def vertices(self) -> range:
        return range(self.n)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)


def _check_ids(g: Graph, vs: Iterable[int]) -> None:
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise InputError(f"invalid vertex id {v!r} for graph on {g.n} vertices")


def bfs(g: Graph, sources: Iterable[int], limit: float = INFINITE,
        within: frozenset[int] | set[int] | None = None) -> dict[int, int]:
    """Multi-source BFS returning only reached vertices.

    ``limit`` caps the explored depth; ``within`` restricts the search to
    an induced subgraph (sources outside it are ignored).
    """
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if s in dist or (within is not None and s not in within):
            continue
        dist[s] = 0
        queue.append(s)
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du >= limit:
            continue
        for w in adj[u]:
            if w not in dist and (within is None or w in within):
                dist[w] = du + 1
                queue.append(w)
    return dist


def bfs_distances(g: Graph, sources: Iterable[int]) -> dict[int, float]:
    sources = list(sources)
    _check_ids(g, sources)
    reached = bfs(g, sources)
    return {v: reached.get(v, INFINITE) for v in range(g.n)}


def ball(g: Graph, s: Iterable[int], r: int) -> frozenset[int]:
    s = list(s)
    _check_ids(g, s)
    if r < 0:
        raise InputError("radius must be nonnegative")
    return frozenset(bfs(g, s, r))


def weak_diameter(g: Graph, s: Iterable[int]) -> float:
    s = sorted(set(s))
    _check_ids(g, s)
    best = 0
    targets = set(s)
    adj = g.adj
    for x in s:
        # BFS from x, stopping once every target has been reached
        dist = {x: 0}
        queue = deque([x])
        left = len(targets) - 1
        while queue and left:
            u = queue.popleft()
            du = dist[u] + 1
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du
                    queue.append(w)
                    if w in targets:
                        left -= 1
                        if du > best:
                            best = du
        if left:
            return INFINITE
    return best


def far_pair(g: Graph, s: Iterable[int], bound: float) -> tuple[int, int, float] | None:
    """Return some pair of ``s`` at distance > ``bound`` in ``g`` (with that
    distance, INFINITE allowed), or None if the weak diameter is ≤ bound.
    Searches only to depth ``bound`` from each vertex."""
    s = sorted(set(s))
    if len(s) <= 1:
        return None
    if bound == INFINITE:
        return None
    for x in s:
        d = bfs(g, [x], bound)
        for y in s:
            if y not in d:
                exact = bfs(g, [x]).get(y, INFINITE)
                return (x, y, exact)
    return None


def monochromatic_components(g: Graph, c: Coloring) -> list[tuple[int, tuple[int, ...]]]:
    _check_ids(g, c.keys())
    seen: set[int] = set()
    out = []
    for v in sorted(c):
        if v in seen:
            continue
        col = c[v]
        comp = [v]
        seen.add(v)
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w not in seen and c.get(w) == col:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append((col, tuple(sorted(comp))))
    return out


def coloring_weak_diameter(g: Graph, c: Coloring) -> float:
    best = 0
    for _, comp in monochromatic_components(g, c):
        if len(comp) > 1:
            best = max(best, weak_diameter(g, comp))
    return best


def coloring_far_pair(g: Graph, c: Coloring, bound: float) -> tuple[int, int, float] | None:
    """First monochromatic pair at distance > ``bound``, or None."""
    for _, comp in monochromatic_components(g, c):
        hit = far_pair(g, comp, bound)
        if hit is not None:
            return hit
    return None


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    seen = [False] * g.n
    out = []
    for v in range(g.n):
        if seen[v]:
            continue
        comp = list(bfs(g, [v]))
        for u in comp:
            seen[u] = True
        out.append(tuple(sorted(comp)))
    return out


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    verts = sorted(set(s))
    _check_ids(g, verts)
    mapping = {v: i for i, v in enumerate(verts)}
    adj = tuple(tuple(mapping[w] for w in g.adj[v] if w in mapping) for v in verts)
    return Graph(len(verts), adj), mapping


def is_bipartite(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    a = tuple(v for v in range(g.n) if side[v] == 0)
    b = tuple(v for v in range(g.n) if side[v] == 1)
    return a, b


def girth(g: Graph) -> float:
    best = INFINITE
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def all_pairs_distances(g: Graph) -> list[list[float]]:
    out = []
    for v in range(g.n):
        d = bfs(g, [v])
        out.append([d.get(u, INFINITE) for u in range(g.n)])
    return out
