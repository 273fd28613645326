"""Rooted tree-decompositions, constructions and their validation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InputError
from .graph import Graph, connected_components, induced_subgraph


@dataclass(frozen=True)
class RootedTreeDecomposition:
    root: int
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # (parent, child)
    bags: Mapping[int, frozenset[int]] = field(repr=False)

    @classmethod
    def build(cls, root: int, nodes: Iterable[int], edges: Iterable[tuple[int, int]],
              bags: Mapping[int, Iterable[int]]) -> "RootedTreeDecomposition":
        nodes = tuple(sorted(set(nodes)))
        fb = {t: frozenset(bags.get(t, ())) for t in nodes}
        for t in bags:
            if t not in fb:
                raise InputError(f"bag given for unknown node {t}")
        return cls(root, nodes, tuple(sorted((p, c) for p, c in edges)), fb)

    @classmethod
    def single(cls, vertices: Iterable[int], node: int = 0) -> "RootedTreeDecomposition":
        return cls.build(node, [node], [], {node: vertices})

    @cached_property
    def parent(self) -> dict[int, int | None]:
        par: dict[int, int | None] = {t: None for t in self.nodes}
        for p, c in self.edges:
            par[c] = p
        return par

    @cached_property
    def children(self) -> dict[int, tuple[int, ...]]:
        ch: dict[int, list[int]] = {t: [] for t in self.nodes}
        for p, c in self.edges:
            ch.setdefault(p, []).append(c)
        return {t: tuple(sorted(v)) for t, v in ch.items()}

    def bag(self, t: int) -> frozenset[int]:
        return self.bags[t]

    def adhesion_set(self, p: int, c: int) -> frozenset[int]:
        return self.bags[p] & self.bags[c]

    def preorder(self) -> list[int]:
        out, stack = [], [self.root]
        while stack:
            t = stack.pop()
            out.append(t)
            stack.extend(reversed(self.children.get(t, ())))
        return out

    def subtree(self, t: int) -> list[int]:
        out, stack = [], [t]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(self.children.get(u, ()))
        return out

    def depth(self) -> dict[int, int]:
        d = {self.root: 0}
        for t in self.preorder():
            for c in self.children.get(t, ()):
                d[c] = d[t] + 1
        return d

    def vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.bags.values():
            out |= b
        return frozenset(out)

    def next_node_id(self) -> int:
        return max(self.nodes, default=-1) + 1


@dataclass(frozen=True)
class ConstructionParams:
    eta: int
    theta: int

    def __post_init__(self):
        if not (0 <= self.eta <= self.theta):
            raise InputError(f"construction parameters need 0 <= eta <= theta, got ({self.eta}, {self.theta})")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {r for r, _ in self.violations}

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [{"rule": r, "where": w} for r, w in self.violations]}


def tree_shape_violations(td: RootedTreeDecomposition) -> list[tuple[str, str]]:
    out = []
    nodes = set(td.nodes)
    if td.root not in nodes:
        out.append(("tree-shape", f"root {td.root} is not a node"))
        return out
    indeg: dict[int, int] = {t: 0 for t in nodes}
    for p, c in td.edges:
        if p not in nodes or c not in nodes:
            out.append(("tree-shape", f"edge ({p}, {c}) references an unknown node"))
            continue
        indeg[c] += 1
    if out:
        return out
    if indeg[td.root] != 0:
        out.append(("tree-shape", f"root {td.root} has a parent"))
    for t in sorted(nodes - {td.root}):
        if indeg[t] != 1:
            out.append(("tree-shape", f"node {t} has {indeg[t]} parents"))
    if len(td.edges) != len(nodes) - 1:
        out.append(("tree-shape", f"{len(td.edges)} edges for {len(nodes)} nodes"))
    seen = {td.root}
    queue = deque([td.root])
    children: dict[int, list[int]] = {}
    for p, c in td.edges:
        children.setdefault(p, []).append(c)
    while queue:
        t = queue.popleft()
        for c in children.get(t, ()):
            if c not in seen:
                seen.add(c)
                queue.append(c)
    for t in sorted(nodes - seen):
        out.append(("tree-shape", f"node {t} unreachable from the root"))
    return out


def validate_tree_decomposition(g: Graph, td: RootedTreeDecomposition) -> ValidationReport:
    out = tree_shape_violations(td)
    if out:
        return ValidationReport(tuple(out))
    holders: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for t in td.nodes:
        for v in sorted(td.bags[t]):
            if not isinstance(v, int) or not 0 <= v < g.n:
                out.append(("bag-vertex", f"node {t} holds invalid vertex {v!r}"))
            else:
                holders[v].append(t)
    for v in range(g.n):
        if not holders[v]:
            out.append(("vertex-coverage", f"vertex {v} is in no bag"))
    for u, v in g.edges:
        hu, hv = holders[u], holders[v]
        small, other = (hu, v) if len(hu) <= len(hv) else (hv, u)
        if not any(other in td.bags[t] for t in small):
            out.append(("edge-coverage", f"edge ({u}, {v}) is in no bag"))
    par = td.parent
    for v in range(g.n):
        hs = holders[v]
        if len(hs) <= 1:
            continue
        # the holders form a subtree iff exactly one of them has its parent outside
        hset = set(hs)
        tops = [t for t in hs if par[t] not in hset]
        if len(tops) != 1:
            out.append(("connectivity", f"nodes holding vertex {v} form {len(tops)} pieces"))
    return ValidationReport(tuple(out))


def adhesion(td: RootedTreeDecomposition) -> int:
    return max((len(td.bags[p] & td.bags[c]) for p, c in td.edges), default=0)


def width(td: RootedTreeDecomposition) -> int:
    return max((len(b) for b in td.bags.values()), default=0) - 1


def restrict_bags(td: RootedTreeDecomposition, s: Iterable[int],
                  relabel: Mapping[int, int] | None = None) -> RootedTreeDecomposition:
    """Intersect every bag with ``s``; with ``relabel`` (e.g. the mapping from
    induced_subgraph) the surviving vertices are renamed too."""
    s = frozenset(s)
    bags = {}
    for t, b in td.bags.items():
        kept = b & s
        bags[t] = frozenset(relabel[v] for v in kept) if relabel is not None else kept
    return RootedTreeDecomposition(td.root, td.nodes, td.edges, bags)


def torso(g: Graph, td: RootedTreeDecomposition, t: int) -> Graph:
    """Torso at node ``t``; vertex i of the result is the i-th smallest
    vertex of the bag."""
    if t not in td.bags:
        raise InputError(f"unknown tree node {t}")
    bag = td.bags[t]
    h, mapping = induced_subgraph(g, bag)
    extra = []
    nbrs = list(td.children.get(t, ()))
    if td.parent[t] is not None:
        nbrs.append(td.parent[t])
    for o in nbrs:
        common = sorted(bag & td.bags[o])
        for i, a in enumerate(common):
            for b in common[i + 1:]:
                extra.append((mapping[a], mapping[b]))
    return Graph.from_edges(h.n, list(h.edges) + extra, strict=False)


def truncation(td: RootedTreeDecomposition, e: tuple[int, int]) -> tuple[RootedTreeDecomposition, int]:
    p, c = e
    if (p, c) not in set(td.edges):
        raise InputError(f"({p}, {c}) is not a tree edge")
    keep = td.subtree(c)
    kset = set(keep)
    new = td.next_node_id()
    bags = {t: td.bags[t] for t in keep}
    bags[new] = td.bags[p] & td.bags[c]
    edges = [(a, b) for a, b in td.edges if a in kset and b in kset] + [(new, c)]
    return RootedTreeDecomposition.build(new, keep + [new], edges, bags), new


def validate_construction(g: Graph, td: RootedTreeDecomposition, p: ConstructionParams) -> ValidationReport:
    out = []
    for a, b in td.edges:
        ad = td.bags[a] & td.bags[b]
        if len(ad) > p.theta:
            out.append(("adhesion", f"edge ({a}, {b}) has adhesion {len(ad)} > {p.theta}"))
        if len(ad) > p.eta:
            if td.children.get(b):
                out.append(("C1", f"edge ({a}, {b}) has adhesion {len(ad)} > {p.eta} but node {b} has children"))
                continue
            rest = td.bags[b] - td.bags[a]
            sub, _ = induced_subgraph(g, rest)
            big = max((len(cc) for cc in connected_components(sub)), default=0)
            if big > 2:
                out.append(("C1", f"node {b} leaves a component of {big} vertices beyond its adhesion"))
    rb = td.bags.get(td.root, frozenset())
    if len(rb) > p.theta:
        out.append(("C2", f"root bag has {len(rb)} > {p.theta} vertices"))
    if p.eta > 0 and not rb:
        out.append(("C2", "root bag is empty"))
    return ValidationReport(tuple(out))


def reroot(td: RootedTreeDecomposition, new_root: int) -> RootedTreeDecomposition:
    if new_root not in td.bags:
        raise InputError(f"unknown tree node {new_root}")
    nbrs: dict[int, list[int]] = {t: [] for t in td.nodes}
    for a, b in td.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    edges = []
    seen = {new_root}
    queue = deque([new_root])
    while queue:
        t = queue.popleft()
        for o in sorted(nbrs[t]):
            if o not in seen:
                seen.add(o)
                edges.append((t, o))
                queue.append(o)
    return RootedTreeDecomposition.build(new_root, td.nodes, edges, td.bags)


def prune_empty_leaves(td: RootedTreeDecomposition) -> RootedTreeDecomposition:
    """Repeatedly delete non-root leaves whose bag is empty."""
    alive = set(td.nodes)
    kids = {t: set(c) for t, c in td.children.items()}
    par = td.parent
    stack = [t for t in td.nodes if t != td.root and not kids[t] and not td.bags[t]]
    while stack:
        t = stack.pop()
        alive.discard(t)
        p = par[t]
        kids[p].discard(t)
        if p != td.root and not kids[p] and not td.bags[p]:
            stack.append(p)
    if len(alive) == len(td.nodes):
        return td
    edges = [(a, b) for a, b in td.edges if a in alive and b in alive]
    return RootedTreeDecomposition.build(td.root, alive, edges, {t: td.bags[t] for t in alive})


def make_tw_construction(g: Graph, td: RootedTreeDecomposition,
                         w: int | None = None) -> tuple[RootedTreeDecomposition, ConstructionParams]:
    """Normalize a width-w decomposition into a (w+1, w+1)-construction."""
    rep = validate_tree_decomposition(g, td)
    if not rep.ok:
        raise InputError(f"invalid tree-decomposition: {rep.violations[0][1]}")
    wd = width(td)
    if w is None:
        w = max(wd, 1)
    if wd > w:
        raise InputError(f"decomposition has width {wd} > {w}")
    params = ConstructionParams(w + 1, w + 1)
    if g.n == 0:
        return td, params
    td = prune_empty_leaves(td)
    if not td.bags[td.root]:
        candidates = [t for t in td.nodes if td.bags[t]]
        if not candidates:
            raise InputError("nonempty graph but every bag is empty")
        td = prune_empty_leaves(reroot(td, candidates[0]))
    return td, params
