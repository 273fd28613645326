"""Exhaustive ground-truth oracles."""

from __future__ import annotations

from itertools import product
from math import prod

from .errors import ClaimViolation, InputError, TooLargeError
from .generators import GadgetOutput
from .graph import INFINITE, Graph, all_pairs_distances, bfs, girth
from .legitimacy import ListAssignment

TOO_LARGE = "too large"


def _component_diameter(g: Graph, colors, dist, stop: float) -> float:
    """Weak diameter of the coloring given as a per-vertex sequence; gives up
    (returning ``stop``) as soon as the value reaches ``stop``."""
    n = g.n
    label = list(range(n))

    def find(x):
        while label[x] != x:
            label[x] = label[label[x]]
            x = label[x]
        return x

    for u, v in g.edges:
        if colors[u] == colors[v]:
            a, b = find(u), find(v)
            if a != b:
                label[b] = a
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    best = 0
    for members in groups.values():
        for i, a in enumerate(members):
            row = dist[a]
            for b in members[i + 1:]:
                if row[b] > best:
                    best = row[b]
                    if best >= stop:
                        return stop
    return best


def brute_force_min_weak_diameter(g: Graph, lists: ListAssignment, cap: int = 1 << 20) -> tuple[float, dict[int, int]]:
    """Minimum weak diameter over all L-colorings, by lexicographic
    enumeration (vertex 0 varies slowest); the first optimum is kept."""
    if len(lists) != g.n:
        raise InputError(f"{len(lists)} lists for {g.n} vertices")
    total = prod(len(l) for l in lists.lists)
    if total > cap:
        raise TooLargeError(f"{total} colorings exceed the cap {cap}")
    if g.n == 0:
        return 0, {}
    dist = all_pairs_distances(g)
    best, witness = INFINITE, None
    for combo in product(*lists.lists):
        val = _component_diameter(g, combo, dist, best)
        if val < best:
            best, witness = val, combo
            if best == 0:
                break
    return best, dict(enumerate(witness))


def gadget_weak_diameter_claim(go: GadgetOutput, g_host_girth: int, cap: int = 1 << 24):
    """(threshold, verdict): verdict is True iff every L-coloring has a
    monochromatic component of weak diameter above 2*floor(g/4)-3, or
    TOO_LARGE when the colorings exceed ``cap``."""
    threshold = 2 * (g_host_girth // 4) - 3
    g = go.graph
    total = prod(len(l) for l in go.lists.lists)
    if total > cap:
        return threshold, TOO_LARGE
    dist = all_pairs_distances(g)
    for combo in product(*go.lists.lists):
        if _component_diameter(g, combo, dist, INFINITE) <= threshold:
            return threshold, False
    return threshold, True


def enumerate_cycles(g: Graph) -> list[tuple[int, ...]]:
    """Every cycle once, starting at its smallest vertex, with the second
    vertex smaller than the last."""
    out = []
    for s in range(g.n):
        stack = [(s, [s], {s})]
        while stack:
            v, path, seen = stack.pop()
            for w in g.adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > s and w not in seen:
                    stack.append((w, path + [w], seen | {w}))
    return out


def girth_far_check(g: Graph, cycle) -> tuple[int, int, float]:
    """Farthest pair of cycle vertices (in g); raises if closer than
    floor(girth/4)."""
    cyc = list(cycle)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise InputError("a cycle needs at least 3 distinct vertices")
    for i, v in enumerate(cyc):
        if not 0 <= v < g.n or not g.has_edge(v, cyc[(i + 1) % len(cyc)]):
            raise InputError(f"{cyc} is not a cycle of the graph")
    gg = girth(g)
    if gg < 4:
        raise InputError("graph girth must be at least 4")

    best = (cyc[0], cyc[0], 0)
    targets = set(cyc)
    for x in cyc:
        d = bfs(g, [x])
        for y in targets:
            if d.get(y, INFINITE) > best[2]:
                best = (x, y, d.get(y, INFINITE))
    if best[2] < gg // 4:
        raise ClaimViolation(f"cycle {cyc} has max pairwise distance {best[2]} < {gg // 4}")
    return best
