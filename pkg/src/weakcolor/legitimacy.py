"""List-assignments, centered-set witnesses and legitimacy checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .decomposition import RootedTreeDecomposition, ValidationReport
from .errors import InputError
from .graph import Graph, bfs, coloring_far_pair


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex color lists; ``lists[v]`` is a sorted tuple."""

    lists: tuple[tuple[int, ...], ...]
    palette: tuple[int, ...] = ()

    def __post_init__(self):
        used = set()
        for v, lst in enumerate(self.lists):
            if not lst:
                raise InputError(f"vertex {v} has an empty list")
            used.update(lst)
        if self.palette:
            extra = used - set(self.palette)
            if extra:
                raise InputError(f"colors {sorted(extra)} are outside the palette")
        else:
            object.__setattr__(self, "palette", tuple(sorted(used)))

    @classmethod
    def of(cls, lists: Iterable[Iterable[int]], palette: Iterable[int] = ()) -> "ListAssignment":
        return cls(tuple(tuple(sorted(set(l))) for l in lists), tuple(sorted(set(palette))))

    @classmethod
    def uniform(cls, n: int, colors: Iterable[int]) -> "ListAssignment":
        cols = tuple(sorted(set(colors)))
        return cls(tuple(cols for _ in range(n)), cols)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.lists[v]

    def __len__(self) -> int:
        return len(self.lists)

    def respects(self, c: Mapping[int, int]) -> bool:
        return all(0 <= v < len(self.lists) and col in self.lists[v] for v, col in c.items())


@dataclass(frozen=True)
class CenteredWitness:
    centers: frozenset[int]
    radius: int

    @classmethod
    def of(cls, centers: Iterable[int], radius: int) -> "CenteredWitness":
        if radius < 0:
            raise InputError("witness radius must be nonnegative")
        return cls(frozenset(centers), radius)


@dataclass(frozen=True)
class LegitimacyParams:
    m: int
    s: int
    r: int
    k: int

    def __post_init__(self):
        if self.m < 2 or self.r < 1 or self.k < 1 or self.s < 0:
            raise InputError(f"legitimacy parameters need m>=2, s>=0, r>=1, k>=1; got {self}")


def one_list_set(L: ListAssignment | Sequence[Sequence[int]]) -> frozenset[int]:
    lists = L.lists if isinstance(L, ListAssignment) else L
    return frozenset(v for v, lst in enumerate(lists) if len(lst) == 1)


def forced_coloring(L: ListAssignment | Sequence[Sequence[int]]) -> dict[int, int]:
    lists = L.lists if isinstance(L, ListAssignment) else L
    return {v: lst[0] for v, lst in enumerate(lists) if len(lst) == 1}


def check_centered(g: Graph, z: Iterable[int], w: CenteredWitness,
                   within: frozenset[int] | None = None) -> bool:
    """True iff every vertex of z is within w.radius of w.centers (inside
    g[within] when ``within`` is given)."""
    z = set(z)
    if not z:
        return True
    if within is not None and not (w.centers <= within and z <= within):
        return False
    reach = bfs(g, w.centers, w.radius, within)
    return z <= reach.keys()


def check_legitimate(g: Graph, td: RootedTreeDecomposition, L: ListAssignment | Sequence[Sequence[int]],
                     p: LegitimacyParams, witnesses: Mapping[int, CenteredWitness]) -> ValidationReport:
    lists = L.lists if isinstance(L, ListAssignment) else L
    out = []
    if len(lists) != g.n:
        return ValidationReport((("L1", f"{len(lists)} lists for {g.n} vertices"),))
    for v, lst in enumerate(lists):
        if len(lst) not in (1, p.m):
            out.append(("L1", f"vertex {v} has a list of size {len(lst)}"))
    ones = one_list_set(lists)
    for t in td.nodes:
        need = ones & td.bags[t]
        if not need:
            continue
        w = witnesses.get(t)
        if w is None:
            out.append(("witness-required", f"node {t} has precolored vertices but no witness"))
            continue
        if len(w.centers) > p.s or w.radius > p.r:
            out.append(("L2", f"node {t}: witness ({len(w.centers)}, {w.radius}) exceeds ({p.s}, {p.r})"))
        elif not check_centered(g, need, w, td.bags[t]):
            out.append(("L2", f"node {t}: precolored vertices not covered by the witness"))
    hit = coloring_far_pair(g, forced_coloring(lists), p.k)
    if hit is not None:
        u, v, d = hit
        out.append(("L3", f"forced vertices {u} and {v} share a component at distance {d} > {p.k}"))
    return ValidationReport(tuple(out))
