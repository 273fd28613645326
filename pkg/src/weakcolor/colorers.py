"""User-facing colorers assembled from the extension engine."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping

from .bounds import (bound_add_centered, bound_small_extension, bound_torso,
                     bound_tw, tw_local_guarantee)
from .decomposition import (ConstructionParams, RootedTreeDecomposition,
                            adhesion, make_tw_construction, reroot,
                            validate_tree_decomposition, width)
from .engine import (ChildExtension, EngineInstance, EngineStats,
                     LocalColorer, extend_coloring, smallest_coloring)
from .errors import ContractError, InputError, PrecoloringError
from .graph import (Graph, coloring_far_pair, connected_components,
                    induced_subgraph, is_bipartite, weak_diameter)
from .legitimacy import CenteredWitness, LegitimacyParams, ListAssignment


def arbitrary_local_colorer(ext: ChildExtension) -> dict[int, int]:
    return smallest_coloring(ext)


def color_bounded_treewidth(g: Graph, td: RootedTreeDecomposition, lists: ListAssignment,
                            c0: Mapping[int, int] | None = None, k: int = 1, w: int | None = None, *,
                            strict_paper: bool = False, stats: EngineStats | None = None) -> dict[int, int]:
    """Extend ``c0`` to an L-coloring of a graph of treewidth at most w.

    Every list must have size 2 and ``c0`` must have weak diameter at most
    k. The result has weak diameter at most ``bound_tw(w, k)``.
    """
    c0 = dict(c0 or {})
    if k < 1:
        raise InputError("k must be at least 1")
    if len(lists) != g.n:
        raise InputError(f"{len(lists)} lists for {g.n} vertices")
    for v, lst in enumerate(lists.lists):
        if len(lst) != 2:
            raise InputError(f"vertex {v} has a list of size {len(lst)}, expected 2")
    for v, col in c0.items():
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise InputError(f"precolored vertex {v!r} is not a vertex")
        if col not in lists[v]:
            raise InputError(f"precolored vertex {v} has color {col} outside its list")
    rep = validate_tree_decomposition(g, td)
    if not rep.ok:
        raise InputError(f"invalid tree-decomposition: {rep.violations[0][1]}")
    if w is None:
        w = max(width(td), 1)
    hit = coloring_far_pair(g, c0, k)
    if hit is not None:
        u, v, d = hit
        raise PrecoloringError(f"precoloring puts {u} and {v} in one component at distance {d} > k={k}",
                               pair=(u, v), distance=d)
    if g.n == 0:
        return {}
    ctd, params = make_tw_construction(g, td, w)
    pinned = ListAssignment(tuple((c0[v],) if v in c0 else lists[v] for v in range(g.n)), lists.palette)
    witnesses = {t: CenteredWitness(ctd.bags[t], 0) for t in ctd.nodes}
    colorer = LocalColorer(arbitrary_local_colorer, tw_local_guarantee(w), "smallest-color")
    inst = EngineInstance(g, ctd, params, pinned, LegitimacyParams(2, w + 1, 1, k), colorer, {}, witnesses)
    c = extend_coloring(inst, strict_paper=strict_paper, stats=stats)
    bound = bound_tw(w, k)
    far = coloring_far_pair(g, c, bound)
    if far is not None:
        raise ContractError(f"treewidth coloring exceeds its bound {bound}", pair=far[:2], distance=far[2])
    return c


def contract_pendants(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """g[s] plus a clique on N[C] ∩ s for every component C of g - s.
    Returns the graph and the sorted list of s (local id -> vertex)."""
    s = sorted(set(s))
    sset = set(s)
    base, mp = induced_subgraph(g, s)
    rest, rmp = induced_subgraph(g, [v for v in range(g.n) if v not in sset])
    inv = sorted(rmp, key=rmp.get)
    extra = []
    for comp in connected_components(rest):
        touch = sorted({mp[w] for i in comp for w in g.adj[inv[i]] if w in sset})
        for i, a in enumerate(touch):
            for b in touch[i + 1:]:
                extra.append((a, b))
    return Graph.from_edges(base.n, list(base.edges) + extra, strict=False), s


def small_extension_color(g: Graph, s: Iterable[int], lists: ListAssignment | tuple,
                          inner: Callable[[Graph, list[int]], Mapping[int, int]],
                          d: int | None = None, inner_bound: int | None = None) -> dict[int, int]:
    """Color g from a coloring of the pendant-contracted graph on s.

    ``inner(h, order)`` colors h, whose vertex i is ``order[i]`` in g. Every
    component of g - s must have diameter at most d (checked). When
    ``inner_bound`` is given the result is checked against
    ``bound_small_extension(d, inner_bound)``.
    """
    lsts = lists.lists if isinstance(lists, ListAssignment) else lists
    sset = set(s)
    rest, rmp = induced_subgraph(g, [v for v in range(g.n) if v not in sset])
    worst = 0
    for comp in connected_components(rest):
        worst = max(worst, weak_diameter(rest, comp))
    if d is None:
        d = worst
    elif worst > d:
        raise InputError(f"a component outside s has diameter {worst} > {d}")
    h, order = contract_pendants(g, sset)
    inner_c = inner(h, order)
    c = {order[i]: col for i, col in inner_c.items()}
    for v in range(g.n):
        if v not in sset:
            c[v] = lsts[v][0]
    if inner_bound is not None:
        bound = bound_small_extension(d, inner_bound)
        far = coloring_far_pair(g, c, bound)
        if far is not None:
            raise ContractError(f"pendant extension exceeds {bound}", pair=far[:2], distance=far[2])
    return c


@dataclass(frozen=True)
class TorsoOracle:
    """Colors subgraphs of torsos.

    ``color(w, lists, node, origin)`` gets a subgraph ``w`` of the torso at
    ``node``, where ``origin[i]`` is the caller's vertex id of local vertex
    i. It returns a coloring of ``w`` whose weak diameter in ``w`` is at
    most ``guarantee``.
    """

    color: Callable[[Graph, tuple, Hashable, tuple], Mapping[int, int]]
    guarantee: int
    name: str = "oracle"


def torso_local_colorer(oracle: TorsoOracle) -> LocalColorer:
    def color(ext: ChildExtension) -> dict[int, int]:
        def inner(h: Graph, order: list[int]) -> dict[int, int]:
            sub_lists = tuple(ext.lists[v] for v in order)
            origin = tuple(ext.origin[v] for v in order) if ext.origin else tuple(order)
            c = dict(oracle.color(h, sub_lists, ext.node, origin))
            if set(c) != set(range(h.n)) or any(c[i] not in sub_lists[i] for i in range(h.n)):
                raise ContractError(f"{oracle.name} at node {ext.node}: not a list coloring of the torso piece")
            far = coloring_far_pair(h, c, oracle.guarantee)
            if far is not None:
                raise ContractError(
                    f"{oracle.name} at node {ext.node}: vertices {far[0]} and {far[1]} at distance "
                    f"{far[2]} > guarantee {oracle.guarantee}", pair=far[:2], distance=far[2])
            return c

        return small_extension_color(ext.graph, ext.bag, ext.lists, inner, d=1, inner_bound=oracle.guarantee)

    return LocalColorer(color, bound_small_extension(1, oracle.guarantee), f"torso[{oracle.name}]")


def color_with_torso_oracle(g: Graph, td: RootedTreeDecomposition, lists: ListAssignment,
                            oracle: TorsoOracle, p: int | None = None, *, strict_paper: bool = False,
                            stats: EngineStats | None = None) -> dict[int, int]:
    """Combine per-torso colorings along a decomposition of adhesion ≤ p.

    All lists must share one size m >= 2. The result has weak diameter at
    most ``bound_torso(p, oracle.guarantee)``.
    """
    rep = validate_tree_decomposition(g, td)
    if not rep.ok:
        raise InputError(f"invalid tree-decomposition: {rep.violations[0][1]}")
    if len(lists) != g.n:
        raise InputError(f"{len(lists)} lists for {g.n} vertices")
    sizes = {len(l) for l in lists.lists}
    if len(sizes) > 1 or (sizes and min(sizes) < 2):
        raise InputError(f"lists must all have one size m >= 2, got sizes {sorted(sizes)}")
    if g.n == 0:
        return {}
    m = sizes.pop()
    a = adhesion(td)
    p = max(a, 1) if p is None else p
    if p < max(a, 1):
        raise InputError(f"decomposition has adhesion {a} > {p}")
    start = min(t for t in td.nodes if td.bags[t])
    base = reroot(td, start)
    new = base.next_node_id()
    v0 = min(base.bags[start])
    bags = dict(base.bags)
    bags[new] = frozenset([v0])
    ctd = RootedTreeDecomposition.build(new, list(base.nodes) + [new], list(base.edges) + [(new, start)], bags)
    colorer = torso_local_colorer(oracle)
    inst = EngineInstance(g, ctd, ConstructionParams(p, p), lists, LegitimacyParams(m, p, 1, 1), colorer)
    c = extend_coloring(inst, strict_paper=strict_paper, stats=stats)
    bound = bound_torso(p, oracle.guarantee)
    far = coloring_far_pair(g, c, bound)
    if far is not None:
        raise ContractError(f"torso combination exceeds its bound {bound}", pair=far[:2], distance=far[2])
    return c


def bipartite_apex_torso_oracle(w: Graph, z: Iterable[int], palette: Iterable[int]) -> dict[int, int]:
    """Proper 2-coloring of w - z with the first two palette colors and the
    smallest palette color on z."""
    z = set(z)
    pal = sorted(set(palette))
    if len(pal) < 2:
        raise InputError("palette needs at least two colors")
    rest, mp = induced_subgraph(w, [v for v in range(w.n) if v not in z])
    sides = is_bipartite(rest)
    if sides is None:
        raise InputError("graph minus the apex set is not bipartite")
    inv = sorted(mp, key=mp.get)
    c = {v: pal[0] for v in z}
    for i in sides[0]:
        c[inv[i]] = pal[0]
    for i in sides[1]:
        c[inv[i]] = pal[1]
    return c


def bipartite_apex_oracle(apex_sets: Mapping[Hashable, Iterable[int]], palette: Iterable[int]) -> TorsoOracle:
    """Torso oracle from per-node apex sets (in caller vertex ids)."""
    pal = tuple(sorted(set(palette)))
    sets = {t: frozenset(z) for t, z in apex_sets.items()}
    xi = max((len(z) for z in sets.values()), default=0)

    def color(w: Graph, lists: tuple, node: Hashable, origin: tuple) -> dict[int, int]:
        apex = sets.get(node, frozenset())
        z = [i for i, o in enumerate(origin) if o in apex]
        c = bipartite_apex_torso_oracle(w, z, pal)
        for i, col in c.items():
            if col not in lists[i]:
                raise ContractError(f"apex oracle at node {node}: color {col} not in the list of vertex {origin[i]}")
        return c

    return TorsoOracle(color, bound_add_centered(xi, 0, 1), "bipartite-apex")


def brute_force_torso_oracle(guarantee: int, cap: int = 1 << 20) -> TorsoOracle:
    """Exhaustive oracle: best coloring of each torso piece.

    A safe ``guarantee`` is (largest bag size - 1), since every
    monochromatic component of a piece is connected inside it.
    """
    from .oracles import brute_force_min_weak_diameter

    def color(w: Graph, lists: tuple, node: Hashable, origin: tuple) -> dict[int, int]:
        _, best = brute_force_min_weak_diameter(w, ListAssignment(tuple(lists)), cap)
        return best

    return TorsoOracle(color, guarantee, "brute-force")
