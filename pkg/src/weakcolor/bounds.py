"""Explicit weak-diameter bound calculators (exact integers)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError


@dataclass(frozen=True)
class BoundParams:
    theta: int
    s: int
    r: int
    k: int

    def __post_init__(self):
        if self.theta < 0 or self.s < self.theta or self.r < 1 or self.k < 1:
            raise InputError(f"bound parameters need theta>=0, s>=theta, r>=1, k>=1; got {self}")

    @property
    def radius(self) -> int:
        """Radius of the precolored root ball, (k+2)(theta+1)."""
        return (self.k + 2) * (self.theta + 1)


def bound_all_centered(k: int, r: int) -> int:
    """Weak diameter of any coloring of a graph whose vertex set lies
    within distance r of at most k centers."""
    if k < 0 or r < 0:
        raise InputError("bound_all_centered needs k, r >= 0")
    return 2 * r + max(k - 1, 0) * (2 * r + 1)


def bound_add_centered(k: int, r: int, n: int) -> int:
    """Weak diameter after adding a (k, r)-centered precolored set to a
    coloring of weak diameter n."""
    if k < 0 or r < 0 or n < 0:
        raise InputError("bound_add_centered needs k, r, N >= 0")
    rho = n + r + 1
    return 2 * rho + max(k - 1, 0) * (2 * rho + 1)


def base_n1(bp: BoundParams) -> int:
    return bound_all_centered(bp.theta, bp.radius)


def f1(bp: BoundParams, x: int) -> int:
    return bound_add_centered(bp.theta, bp.radius, x)


def f2(bp: BoundParams, x: int) -> int:
    return bound_add_centered(bp.s, bp.r, x)


def f3(bp: BoundParams, x: int) -> int:
    return bound_add_centered(bp.theta, bp.radius + bp.k + bp.r, x)


def bound_fstar(bp: BoundParams, eta: int, n: int) -> int:
    if eta < 0 or eta > bp.theta:
        raise InputError(f"eta must lie in [0, theta={bp.theta}], got {eta}")
    if n < 0:
        raise InputError("N must be nonnegative")
    return _fstar(bp, eta, n)


@lru_cache(maxsize=4096)
def _fstar(bp: BoundParams, eta: int, n: int) -> int:
    n1 = base_n1(bp)
    if eta == 0:
        return n1 + f1(bp, n)
    inner = _fstar(bp, eta - 1, n1 + f2(bp, n))
    return (bp.k + 2) * (bp.theta + 1) ** 2 * (4 + f3(bp, f1(bp, inner)))


def tw_local_guarantee(w: int) -> int:
    return max(bound_all_centered(w + 1, 2), 4)


def bound_tw(w: int, k: int) -> int:
    if w < 1 or k < 1:
        raise InputError("bound_tw needs w >= 1 and k >= 1")
    return bound_fstar(BoundParams(w + 1, w + 1, 1, k), w + 1, tw_local_guarantee(w))


def bound_small_extension(d: int, n: int) -> int:
    if d < 0 or n < 0:
        raise InputError("bound_small_extension needs d, N >= 0")
    return (d + 2) * n + 2 * d + 2


def bound_torso(p: int, n: int) -> int:
    if p < 1 or n < 0:
        raise InputError("bound_torso needs p >= 1 and N >= 0")
    return bound_fstar(BoundParams(p, p, 1, 1), p, 3 * n + 4)
