"""Precoloring extension over (eta, theta)-constructions.

The engine takes a graph with a rooted tree-decomposition, a legitimate
list-assignment, a precoloring of the ball around the root bag and a local
colorer for child-extensions. It returns a total list-coloring whose weak
diameter is bounded by ``bound_fstar``.

The recursion has three kinds of steps:

* split a disconnected instance into its components;
* at ``eta == 0`` every piece of the decomposition is a star, which the
  local colorer handles directly;
* otherwise the part of the graph near the root is glued to gadget vertices
  that summarise each branch hanging off it. That gadget graph is coloured
  one level down (``eta - 1``), a buffer coloring is pushed into every
  branch, and each branch is solved recursively at the same ``eta``.

Every claim the recursion relies on is re-checked at run time. A failure
raises ``EngineInvariantError``. A local colorer that breaks its declared
guarantee raises ``ContractError``.
"""

from __future__ import annotations

import sys
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Mapping

from .bounds import BoundParams, base_n1, bound_fstar, f1, f2, f3
from .decomposition import (ConstructionParams, RootedTreeDecomposition,
                            validate_construction, validate_tree_decomposition)
from .errors import ContractError, EngineInvariantError, InputError
from .graph import (Graph, bfs, coloring_far_pair, connected_components,
                    induced_subgraph, monochromatic_components)
from .legitimacy import (CenteredWitness, LegitimacyParams, ListAssignment,
                         check_legitimate, forced_coloring)

Lists = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ChildExtension:
    """Input handed to a local colorer.

    ``node`` names the decomposition node the extension was built at
    (None for artificial single-vertex roots). ``origin`` maps each vertex
    back to the caller's vertex ids, or to None for gadget vertices.
    """

    graph: Graph
    bag: frozenset[int]
    lists: Lists
    node: Hashable | None = None
    origin: tuple[int | None, ...] = ()


@dataclass(frozen=True)
class LocalColorer:
    color: Callable[[ChildExtension], Mapping[int, int]]
    guarantee: int
    name: str = "local"


def smallest_coloring(ext: ChildExtension) -> dict[int, int]:
    return {v: ext.lists[v][0] for v in range(ext.graph.n)}


@dataclass
class EngineStats:
    instances: int = 0
    components_splits: int = 0
    base_cases: int = 0
    descents: int = 0
    branches: int = 0
    gadget_checks: int = 0
    descent_checks: int = 0
    measure_checks: int = 0
    colorer_calls: int = 0
    small_bag_calls: int = 0
    gadget_vertices: int = 0
    max_depth: int = 0

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class EngineInstance:
    graph: Graph
    td: RootedTreeDecomposition
    params: ConstructionParams
    lists: ListAssignment
    legit: LegitimacyParams
    colorer: LocalColorer
    precoloring: Mapping[int, int] = field(default_factory=dict)
    witnesses: Mapping[int, CenteredWitness] = field(default_factory=dict)


@dataclass
class _Ctx:
    bp: BoundParams
    m: int
    universe: tuple[int, ...]
    strict: bool
    checks: bool
    stats: EngineStats

    @property
    def radius(self) -> int:
        return self.bp.radius

    def enlarge(self, lst: tuple[int, ...]) -> tuple[int, ...]:
        """A size-m superset of ``lst`` using the smallest free colors."""
        if len(lst) >= self.m:
            return lst
        out = set(lst)
        for c in self.universe:
            if len(out) == self.m:
                break
            out.add(c)
        return tuple(sorted(out))


@dataclass
class _Inst:
    g: Graph
    td: RootedTreeDecomposition
    eta: int
    lists: Lists
    wit: dict[int, CenteredWitness]
    zc: dict[int, int]
    colorer: LocalColorer
    origin: tuple[int | None, ...]
    tags: dict[int, Hashable | None]
    depth: int = 0

    @property
    def guarantee(self) -> int:
        return self.colorer.guarantee


# ---------------------------------------------------------------- helpers

def _invoke(ctx: _Ctx, colorer: LocalColorer, ext: ChildExtension) -> dict[int, int]:
    """Call a local colorer and verify its output against its guarantee."""
    ctx.stats.colorer_calls += 1
    if len(ext.bag) <= 1:
        # every component is a bag vertex with pendant pairs: diameter <= 4
        ctx.stats.small_bag_calls += 1
        c = smallest_coloring(ext)
    else:
        c = dict(colorer.color(ext))
    n = ext.graph.n
    if set(c) != set(range(n)):
        raise ContractError(f"{colorer.name} at node {ext.node}: coloring is not total on the extension")
    for v, col in c.items():
        if col not in ext.lists[v]:
            raise ContractError(f"{colorer.name} at node {ext.node}: vertex {v} got color {col} outside its list")
    hit = coloring_far_pair(ext.graph, c, colorer.guarantee)
    if hit is not None:
        u, v, d = hit
        raise ContractError(
            f"{colorer.name} at node {ext.node}: vertices {u} and {v} share a component at distance "
            f"{d} > guarantee {colorer.guarantee}", pair=(u, v), distance=d)
    return c


def _respects_bound(g: Graph, c: Mapping[int, int], bound: int) -> tuple[int, int, float] | None:
    # monochromatic components are connected, so their weak diameter is < n
    if bound >= g.n - 1:
        return None
    return coloring_far_pair(g, c, bound)


def _relabel_witness(w: CenteredWitness, mp: Mapping[int, int]) -> CenteredWitness:
    return CenteredWitness(frozenset(mp[v] for v in w.centers if v in mp), w.radius)


def _check_instance(ctx: _Ctx, inst: _Inst, what: str) -> None:
    g, td = inst.g, inst.td
    rep = validate_tree_decomposition(g, td)
    rep = rep + validate_construction(g, td, ConstructionParams(inst.eta, ctx.bp.theta)) if rep.ok else rep
    lp = LegitimacyParams(ctx.m, ctx.bp.s, ctx.bp.r, ctx.bp.k)
    if rep.ok:
        rep = rep + check_legitimate(g, td, inst.lists, lp, inst.wit)
    if not rep.ok:
        raise EngineInvariantError(f"{what}: {rep.violations[0][0]}: {rep.violations[0][1]}")
    if inst.zc:
        near = bfs(g, td.bags[td.root], ctx.radius)
        for v, col in inst.zc.items():
            if v not in near:
                raise EngineInvariantError(f"{what}: precolored vertex {v} lies outside the root ball")
            if col not in inst.lists[v]:
                raise EngineInvariantError(f"{what}: precolored vertex {v} has color {col} outside its list")


def _check_result(ctx: _Ctx, inst: _Inst, c: Mapping[int, int], bound: int, what: str) -> None:
    g = inst.g
    if len(c) != g.n or any(v not in c for v in range(g.n)):
        raise EngineInvariantError(f"{what}: coloring is not total")
    for v in range(g.n):
        if c[v] not in inst.lists[v]:
            raise EngineInvariantError(f"{what}: vertex {v} colored {c[v]} outside its list")
    for v, col in inst.zc.items():
        if c[v] != col:
            raise EngineInvariantError(f"{what}: precolored vertex {v} changed color")
    hit = _respects_bound(g, c, bound)
    if hit is not None:
        raise EngineInvariantError(f"{what}: weak diameter {hit[2]} exceeds bound {bound}")


# ------------------------------------------------------------- recursion

def _extend(ctx: _Ctx, inst: _Inst, parent_measure: tuple | None) -> dict[int, int]:
    g = inst.g
    measure = (inst.eta, 2 * g.n - len(inst.zc), len(inst.td.nodes))
    if parent_measure is not None:
        ctx.stats.measure_checks += 1
        if not measure < parent_measure:
            raise EngineInvariantError(f"recursion measure {measure} does not decrease from {parent_measure}")
    ctx.stats.instances += 1
    ctx.stats.max_depth = max(ctx.stats.max_depth, inst.depth)
    if len(inst.zc) == g.n:
        return dict(inst.zc)
    if inst.eta == 0:
        c = _base_case(ctx, inst)
    else:
        comps = connected_components(g)
        if len(comps) > 1:
            c = _split_components(ctx, inst, comps, measure)
        else:
            norm = _normalize(ctx, inst)
            if len(norm.zc) == g.n:
                c = dict(norm.zc)
            else:
                c = _descend(ctx, norm, (norm.eta, 2 * g.n - len(norm.zc), len(norm.td.nodes)))
    _check_result(ctx, inst, c, bound_fstar(ctx.bp, inst.eta, inst.guarantee), f"level eta={inst.eta}")
    return c


def _base_case(ctx: _Ctx, inst: _Inst) -> dict[int, int]:
    """eta = 0: the decomposition minus its empty-adhesion edges is a
    forest of stars, each giving one child-extension at its centre."""
    ctx.stats.base_cases += 1
    g, td, zc = inst.g, inst.td, inst.zc
    centre: dict[int, int] = {}
    for t in td.preorder():
        p = td.parent[t]
        if p is not None and td.bags[p] & td.bags[t]:
            if centre[p] != p:
                raise EngineInvariantError(f"node {t} is not in a star of nonempty adhesions")
            centre[t] = p
        else:
            centre[t] = t
    groups: dict[int, list[int]] = defaultdict(list)
    for t, ct in centre.items():
        groups[ct].append(t)
    c: dict[int, int] = {}
    for ct in sorted(groups):
        verts: set[int] = set()
        for t in groups[ct]:
            verts |= td.bags[t]
        if not verts or all(v in zc for v in verts):
            continue
        sub, mp = induced_subgraph(g, verts)
        order = sorted(verts)
        ext = ChildExtension(sub, frozenset(mp[v] for v in td.bags[ct]),
                             tuple(inst.lists[v] for v in order), inst.tags.get(ct),
                             tuple(inst.origin[v] for v in order))
        cc = _invoke(ctx, inst.colorer, ext)
        for i, v in enumerate(order):
            if v not in zc:
                c[v] = cc[i]
    c.update(zc)
    return c


def _split_components(ctx: _Ctx, inst: _Inst, comps: list[tuple[int, ...]], measure: tuple) -> dict[int, int]:
    ctx.stats.components_splits += 1
    g, td = inst.g, inst.td
    out: dict[int, int] = {}
    for comp in comps:
        cset = frozenset(comp)
        nodes = [t for t in td.nodes if td.bags[t] & cset]
        nset = set(nodes)
        sub, mp = induced_subgraph(g, comp)
        bags = {t: frozenset(mp[v] for v in td.bags[t] & cset) for t in nodes}
        edges = [(a, b) for a, b in td.edges if a in nset and b in nset]
        wit = {t: _relabel_witness(inst.wit[t], mp) for t in nodes if t in inst.wit}
        tags = {t: inst.tags.get(t) for t in nodes}
        if td.root in nset:
            root = td.root
        else:
            tops = [t for t in nodes if td.parent[t] not in nset]
            if len(tops) != 1:
                raise EngineInvariantError("component does not span a subtree of the decomposition")
            root = td.next_node_id()
            v0 = min(bags[tops[0]])
            bags[root] = frozenset([v0])
            edges.append((root, tops[0]))
            wit[root] = CenteredWitness(frozenset([v0]), 0)
            tags[root] = None
        ctd = RootedTreeDecomposition.build(root, bags.keys(), edges, bags)
        child = _Inst(sub, ctd, inst.eta, tuple(inst.lists[v] for v in comp), wit,
                      {mp[v]: col for v, col in inst.zc.items() if v in cset},
                      inst.colorer, tuple(inst.origin[v] for v in comp), tags, inst.depth + 1)
        if ctx.checks:
            _check_instance(ctx, child, "component split")
        res = _extend(ctx, child, measure)
        for v in comp:
            out[v] = res[mp[v]]
    return out


def _normalize(ctx: _Ctx, inst: _Inst) -> _Inst:
    """Grow the precolored set to the whole root ball (smallest colors on
    new vertices) and drop subtrees behind empty adhesions."""
    g, td = inst.g, inst.td
    if not td.bags[td.root]:
        raise EngineInvariantError("empty root bag at eta >= 1")
    zc = dict(inst.zc)
    for v in bfs(g, td.bags[td.root], ctx.radius):
        if v not in zc:
            zc[v] = inst.lists[v][0]
    removed: set[int] = set()
    for p, ch in td.edges:
        if ch in removed or td.bags[p] & td.bags[ch]:
            continue
        sub = td.subtree(ch)
        if any(td.bags[t] for t in sub):
            raise EngineInvariantError(f"empty adhesion at ({p}, {ch}) separates a nonempty part of a connected graph")
        removed.update(sub)
    if removed:
        keep = [t for t in td.nodes if t not in removed]
        ks = set(keep)
        td = RootedTreeDecomposition.build(td.root, keep, [(a, b) for a, b in td.edges if a in ks and b in ks],
                                           {t: td.bags[t] for t in keep})
    wit = {t: w for t, w in inst.wit.items() if t in td.bags}
    return _Inst(g, td, inst.eta, inst.lists, wit, zc, inst.colorer, inst.origin, inst.tags, inst.depth)


# --------------------------------------------------------------- descent

@dataclass
class Branch:
    """One tree edge leaving the root part, with the data of its far side."""

    edge: tuple[int, int]
    nodes: list[int]
    verts: frozenset[int]
    boundary: tuple[int, ...]
    dist: dict[int, int]
    parts: list[frozenset[int]]
    part_of: dict[int, int]
    needed: list[set[tuple[int, ...]]]
    forced: list[tuple[int, frozenset[int], frozenset[int]]]


@dataclass
class DescentInternals:
    root_nodes: frozenset[int]
    root_verts: tuple[int, ...]
    branches: list[Branch]


@dataclass
class GadgetGraph:
    graph: Graph
    lists: Lists
    index: dict[int, int]
    provenance: dict[int, tuple]
    lookup: dict[tuple[int, int, tuple[int, ...]], int]
    gadgets_of: list[list[int]]


@dataclass
class Descent:
    graph: Graph
    td: RootedTreeDecomposition
    lists: Lists
    witnesses: dict[int, CenteredWitness]
    kinds: dict[int, object]
    keep: list[int]
    enlarged: frozenset[int]


def _partition(g: Graph, xs, reach: int, within=None) -> list[frozenset[int]]:
    xs = sorted(xs)
    xset = set(xs)
    parent = {x: x for x in xs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in xs:
        for y in bfs(g, [x], reach, within):
            if y in xset:
                a, b = find(x), find(y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = defaultdict(set)
    for x in xs:
        groups[find(x)].add(x)
    return [frozenset(groups[r]) for r in sorted(groups)]


def partition_boundary(g_e: Graph, x_e, k: int, theta: int) -> list[frozenset[int]]:
    """Group boundary vertices that are chained by hops of length at most
    2(k+2)(theta+1)+1 inside ``g_e``."""
    return _partition(g_e, x_e, 2 * (k + 2) * (theta + 1) + 1)


def descent_internals(ctx: _Ctx, inst: _Inst) -> DescentInternals:
    g, td, zc = inst.g, inst.td, inst.zc
    R, k = ctx.radius, ctx.bp.k
    root_nodes = frozenset(t for t in td.nodes if any(v in zc for v in td.bags[t]))
    if td.root not in root_nodes or sum(1 for t in root_nodes if td.parent[t] not in root_nodes) != 1:
        raise EngineInvariantError("nodes meeting the root ball do not form a rooted subtree")
    root_verts: set[int] = set()
    for t in root_nodes:
        root_verts |= td.bags[t]
    forced = forced_coloring(inst.lists)
    comps = monochromatic_components(g, forced)
    comp_of = {v: i for i, (_, vs) in enumerate(comps) for v in vs}
    branches = []
    for p, ch in td.edges:
        if p not in root_nodes or ch in root_nodes:
            continue
        nodes = td.subtree(ch)
        verts: set[int] = set()
        for t in nodes:
            verts |= td.bags[t]
        verts = frozenset(verts)
        xe = td.bags[p] & td.bags[ch]
        if not xe or any(v in zc for v in verts):
            raise EngineInvariantError(f"branch at ({p}, {ch}) is empty-bounded or meets the root ball")
        dist = bfs(g, xe, R, verts)
        parts = _partition(g, xe, 2 * R + 1, verts)
        owners: dict[int, list[int]] = defaultdict(list)
        for i, part in enumerate(parts):
            for v in bfs(g, part, R, verts):
                if v not in xe:
                    owners[v].append(i)
        part_of = {}
        for v, d in dist.items():
            if d == 0:
                continue
            if len(owners[v]) != 1:
                raise EngineInvariantError(f"vertex {v} is near {len(owners[v])} boundary parts")
            part_of[v] = owners[v][0]
        needed: list[set[tuple[int, ...]]] = [set() for _ in parts]
        for v, d in dist.items():
            if 1 <= d <= k + 2 and len(inst.lists[v]) != 1:
                needed[part_of[v]].add(inst.lists[v])
        near_ids = sorted({comp_of[v] for v, d in dist.items() if d == 1 and v in comp_of})
        fr = []
        for i in near_ids:
            col, vs = comps[i]
            inside = [v for v in vs if v in verts and v not in xe]
            dm = bfs(g, inside, k, verts)
            n1 = frozenset(x for x in xe if dm.get(x, k + 1) <= 1)
            nk = frozenset(x for x in xe if x in dm)
            fr.append((col, n1, nk))
        branches.append(Branch((p, ch), nodes, verts, tuple(sorted(xe)), dist, parts, part_of, needed, fr))
    return DescentInternals(root_nodes, tuple(sorted(root_verts)), branches)


def build_gadget_graph(ctx: _Ctx, inst: _Inst, di: DescentInternals) -> GadgetGraph:
    g = inst.g
    index = {v: i for i, v in enumerate(di.root_verts)}
    lists: list[tuple[int, ...]] = [inst.lists[v] for v in di.root_verts]
    edges = [(index[u], index[w]) for u in di.root_verts for w in g.adj[u] if w in index and u < w]
    prov: dict[int, tuple] = {}
    lookup: dict[tuple[int, int, tuple[int, ...]], int] = {}
    gadgets_of: list[list[int]] = []
    base_m = tuple(ctx.universe[:ctx.m])
    all_m = list(combinations(ctx.universe, ctx.m)) if ctx.strict else None
    for bi, br in enumerate(di.branches):
        mine = []
        for pi, part in enumerate(br.parts):
            if ctx.strict:
                wanted = all_m
            else:
                wanted = sorted(br.needed[pi]) or [base_m]
            for lst in wanted:
                x = len(lists)
                lists.append(tuple(lst))
                edges.extend((x, index[y]) for y in part)
                prov[x] = ("part", br.edge, tuple(sorted(part)), tuple(lst))
                lookup[(bi, pi, tuple(lst))] = x
                mine.append(x)
        for col, n1, nk in br.forced:
            u, u2 = len(lists), len(lists) + 1
            lists.append((col,))
            lists.append(base_m)
            edges.append((u, u2))
            edges.extend((u, index[y]) for y in n1)
            edges.extend((u2, index[y]) for y in nk)
            prov[u] = ("forced", br.edge, col)
            prov[u2] = ("forced-shadow", br.edge, col)
            mine.extend((u, u2))
        gadgets_of.append(mine)
    h = Graph.from_edges(len(lists), edges)
    ctx.stats.gadget_vertices += len(lists) - len(index)
    gg = GadgetGraph(h, tuple(lists), index, prov, lookup, gadgets_of)
    if ctx.checks:
        ctx.stats.gadget_checks += 1
        hit = coloring_far_pair(h, forced_coloring(gg.lists), ctx.bp.k)
        if hit is not None:
            raise EngineInvariantError(
                f"gadget graph: forced vertices {hit[0]} and {hit[1]} at distance {hit[2]} > k={ctx.bp.k}")
    return gg


def build_descent_construction(ctx: _Ctx, inst: _Inst, di: DescentInternals, gg: GadgetGraph) -> Descent:
    td = inst.td
    h, idx = gg.graph, gg.index
    zh = frozenset(idx[v] for v in inst.zc)
    bags = {t: frozenset(idx[v] for v in td.bags[t]) for t in di.root_nodes}
    edges = [(a, b) for a, b in td.edges if a in di.root_nodes and b in di.root_nodes]
    kinds: dict[int, object] = {t: ("delegate", inst.tags.get(t)) for t in di.root_nodes}
    boundary_of: dict[int, frozenset[int]] = {}
    nid = td.next_node_id()
    for bi, br in enumerate(di.branches):
        leaf = nid
        nid += 1
        xe = frozenset(idx[x] for x in br.boundary)
        bags[leaf] = xe | frozenset(gg.gadgets_of[bi])
        edges.append((br.edge[0], leaf))
        kinds[leaf] = "gadget"
        boundary_of[leaf] = xe
    k, r = ctx.bp.k, ctx.bp.r
    near = bfs(h, zh, k + r)
    lists = list(gg.lists)
    enlarged = set()
    for v in near:
        if v not in zh and len(lists[v]) == 1:
            lists[v] = ctx.enlarge(lists[v])
            enlarged.add(v)
    bags = {t: b - zh for t, b in bags.items()}
    root = td.root
    if inst.eta - 1 >= 1:
        depth = {root: 0}
        kids: dict[int, list[int]] = defaultdict(list)
        par = {}
        for a, b in edges:
            kids[a].append(b)
            par[b] = a
        order = [root]
        for t in order:
            for c in kids[t]:
                depth[c] = depth[t] + 1
                order.append(c)
        t0 = min((t for t in order if bags[t]), key=lambda t: (depth[t], t))
        v0 = min(bags[t0])
        t = t0
        while True:
            bags[t] = bags[t] | {v0}
            if t == root:
                break
            t = par[t]
        new = nid
        bags[new] = frozenset([v0])
        edges.append((new, root))
        kinds[new] = "small"
        root = new
    wit: dict[int, CenteredWitness] = {}
    for t, b in bags.items():
        if len(b) <= 1:
            wit[t] = CenteredWitness(b, 0)
        elif kinds[t] == "gadget":
            wit[t] = CenteredWitness(boundary_of[t], 1)
        else:
            w = inst.wit.get(t)
            if w is not None:
                wit[t] = CenteredWitness(frozenset(idx[v] for v in w.centers) - zh, w.radius)
    keep = [v for v in range(h.n) if v not in zh]
    hz, mp = induced_subgraph(h, keep)
    ntd = RootedTreeDecomposition.build(root, bags.keys(), edges,
                                        {t: frozenset(mp[v] for v in b) for t, b in bags.items()})
    nwit = {t: _relabel_witness(w, mp) for t, w in wit.items()}
    nlists = tuple(lists[v] for v in keep)
    return Descent(hz, ntd, nlists, nwit, kinds, keep, frozenset(enlarged))


def wrap_local_colorer(ctx: _Ctx, parent: LocalColorer, kinds: Mapping[int, object]) -> LocalColorer:
    """Local colorer one level down: gadget leaves and tiny bags are colored
    with smallest colors, original nodes delegate to ``parent``."""

    def color(ext: ChildExtension) -> dict[int, int]:
        kind = kinds.get(ext.node) if ext.node is not None else None
        if len(ext.bag) <= 1 or kind in ("gadget", "small"):
            return smallest_coloring(ext)
        if not isinstance(kind, tuple):
            raise EngineInvariantError(f"no delegation target for node {ext.node}")
        lists = list(ext.lists)
        pinned = [v for v in ext.bag if len(lists[v]) == 1]
        for v in pinned:
            lists[v] = ctx.enlarge(lists[v])
        c = _invoke(ctx, parent, ChildExtension(ext.graph, ext.bag, tuple(lists), kind[1], ext.origin))
        for v in pinned:
            c[v] = ext.lists[v][0]
        return c

    guarantee = base_n1(ctx.bp) + f2(ctx.bp, parent.guarantee)
    return LocalColorer(color, guarantee, f"{parent.name}/wrapped")


def define_buffer_coloring(ctx: _Ctx, inst: _Inst, c_h: Mapping[int, int],
                           di: DescentInternals, gg: GadgetGraph) -> dict[int, int]:
    k = ctx.bp.k
    out: dict[int, int] = {}
    for bi, br in enumerate(di.branches):
        for v, d in br.dist.items():
            lst = inst.lists[v]
            if d == 0:
                out[v] = c_h[gg.index[v]]
            elif len(lst) == 1:
                out[v] = lst[0]
            elif d <= k + 2:
                s = gg.lookup.get((bi, br.part_of[v], lst))
                if s is None:
                    raise EngineInvariantError(f"no gadget vertex carries the list {lst} of vertex {v}")
                out[v] = c_h[s]
            else:
                ring = (d - 1) // (k + 2)
                if len(br.boundary) >= ring:
                    avoid = c_h[gg.index[br.boundary[ring - 1]]]
                    out[v] = min(col for col in lst if col != avoid)
                else:
                    out[v] = lst[0]
    return out


def _descend(ctx: _Ctx, inst: _Inst, measure: tuple) -> dict[int, int]:
    ctx.stats.descents += 1
    g, td = inst.g, inst.td
    bp = ctx.bp
    di = descent_internals(ctx, inst)
    gg = build_gadget_graph(ctx, inst, di)
    ds = build_descent_construction(ctx, inst, di, gg)
    wrapped = wrap_local_colorer(ctx, inst.colorer, ds.kinds)
    origin = tuple(inst.origin[di.root_verts[v]] if v < len(di.root_verts) else None for v in ds.keep)
    child = _Inst(ds.graph, ds.td, inst.eta - 1, ds.lists, ds.witnesses, {}, wrapped, origin,
                  {t: t for t in ds.td.nodes}, inst.depth + 1)
    if ctx.checks:
        ctx.stats.descent_checks += 1
        _check_instance(ctx, child, "descent construction")
    sub = _extend(ctx, child, measure)

    h = gg.graph
    c_h: dict[int, int] = {}
    for i, v in enumerate(ds.keep):
        c_h[v] = sub[i]
    for v, col in inst.zc.items():
        c_h[gg.index[v]] = col
    for v in ds.enlarged:
        c_h[v] = gg.lists[v][0]
    if len(c_h) != h.n or any(c_h[v] not in gg.lists[v] for v in range(h.n)):
        raise EngineInvariantError("gadget-graph coloring is not a valid list coloring")
    n_next = base_n1(bp) + f2(bp, inst.guarantee)
    hb = f3(bp, f1(bp, bound_fstar(bp, inst.eta - 1, n_next)))
    hit = _respects_bound(h, c_h, hb)
    if hit is not None:
        raise EngineInvariantError(f"gadget-graph coloring has weak diameter {hit[2]} > {hb}")

    buffer = define_buffer_coloring(ctx, inst, c_h, di, gg)
    out = {v: c_h[i] for i, v in enumerate(di.root_verts)}
    nid = td.next_node_id()
    for bi, br in enumerate(di.branches):
        ctx.stats.branches += 1
        p, ch = br.edge
        sub_g, mp = induced_subgraph(g, br.verts)
        order = sorted(br.verts)
        nodes = br.nodes
        ns = set(nodes)
        bags = {t: frozenset(mp[v] for v in td.bags[t]) for t in nodes}
        bags[nid] = frozenset(mp[v] for v in br.boundary)
        edges = [(a, b) for a, b in td.edges if a in ns and b in ns] + [(nid, ch)]
        btd = RootedTreeDecomposition.build(nid, bags.keys(), edges, bags)
        lists = tuple(ctx.enlarge(inst.lists[v]) if v in br.dist else inst.lists[v] for v in order)
        wit = {t: _relabel_witness(inst.wit[t], mp) for t in nodes if t in inst.wit}
        wit[nid] = CenteredWitness(frozenset(), 0)
        tags = {t: inst.tags.get(t) for t in nodes}
        tags[nid] = inst.tags.get(p)
        zc = {mp[v]: buffer[v] for v in br.dist}
        child = _Inst(sub_g, btd, inst.eta, lists, wit, zc, inst.colorer,
                      tuple(inst.origin[v] for v in order), tags, inst.depth + 1)
        if ctx.checks:
            _check_instance(ctx, child, "branch instance")
        res = _extend(ctx, child, measure)
        for v in order:
            col = res[mp[v]]
            if v in out and out[v] != col:
                raise EngineInvariantError(f"branch recoloured boundary vertex {v}")
            out[v] = col
    return out


# ------------------------------------------------------------ front door

def color_universe(lists: ListAssignment, m: int) -> tuple[int, ...]:
    cols = set(lists.palette)
    for lst in lists.lists:
        cols.update(lst)
    nxt = max(cols, default=0) + 1
    while len(cols) < m:
        cols.add(nxt)
        nxt += 1
    return tuple(sorted(cols))


def validate_instance(inst: EngineInstance) -> None:
    g, td = inst.graph, inst.td
    lp, cp = inst.legit, inst.params
    if lp.s < cp.theta:
        raise InputError(f"need s >= theta, got s={lp.s}, theta={cp.theta}")
    if inst.colorer.guarantee < 4:
        raise InputError("local colorer guarantee must be at least 4")
    if len(inst.lists) != g.n:
        raise InputError(f"{len(inst.lists)} lists for {g.n} vertices")
    rep = validate_tree_decomposition(g, td)
    if rep.ok:
        rep = validate_construction(g, td, cp)
    if rep.ok:
        rep = check_legitimate(g, td, inst.lists, lp, inst.witnesses)
    if not rep.ok:
        raise InputError(f"rejected instance: {rep.violations[0][0]}: {rep.violations[0][1]}")
    radius = (lp.k + 2) * (cp.theta + 1)
    near = bfs(g, td.bags[td.root], radius) if inst.precoloring else {}
    for v, col in inst.precoloring.items():
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise InputError(f"precolored vertex {v!r} is not a vertex")
        if v not in near:
            raise InputError(f"precolored vertex {v} lies outside the root ball of radius {radius}")
        if col not in inst.lists[v]:
            raise InputError(f"precolored vertex {v} has color {col} outside its list")


def _prepare(inst: EngineInstance, strict_paper: bool = False, checks: bool = True,
             stats: EngineStats | None = None) -> tuple[_Ctx, _Inst]:
    validate_instance(inst)
    lp, cp = inst.legit, inst.params
    bp = BoundParams(cp.theta, lp.s, lp.r, lp.k)
    stats = stats if stats is not None else EngineStats()
    ctx = _Ctx(bp, lp.m, color_universe(inst.lists, lp.m), strict_paper, checks, stats)
    root = _Inst(inst.graph, inst.td, cp.eta, inst.lists.lists, dict(inst.witnesses), dict(inst.precoloring),
                 inst.colorer, tuple(range(inst.graph.n)), {t: t for t in inst.td.nodes})
    return ctx, root


def extend_coloring(inst: EngineInstance, *, strict_paper: bool = False, checks: bool = True,
                    stats: EngineStats | None = None) -> dict[int, int]:
    """Extend ``inst.precoloring`` to a full list-coloring whose weak
    diameter is at most ``bound_fstar(bp, eta, colorer.guarantee)``.

    ``strict_paper`` adds one gadget vertex for every m-subset of the color
    universe instead of only the subsets that are looked up. ``checks``
    turns the per-level structural assertions on (default) or off; the
    final bound check always runs. Counters are accumulated in ``stats``.
    """
    ctx, root = _prepare(inst, strict_paper, checks, stats)
    g, bp, cp = inst.graph, ctx.bp, inst.params
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        c = _extend(ctx, root, None)
    finally:
        sys.setrecursionlimit(limit)
    bound = bound_fstar(bp, cp.eta, inst.colorer.guarantee)
    hit = coloring_far_pair(g, c, bound)
    if hit is not None:
        raise EngineInvariantError(f"final coloring has weak diameter {hit[2]} > {bound}")
    return c
