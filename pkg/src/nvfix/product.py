"""Products of n-valued circle maps on the torus and their fixed point index."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import Degenerate, NotAdmissible
from .index import fix_finite_perturb, fixed_points, index_crossing, index_schirmer, is_admissible
from .lefschetz import lefschetz
from .nmap import NValuedCircleMap, evaluate, is_split, transport
from .regions import OpenArcSet


@dataclass(frozen=True)
class TorusProductMap:
    """``(f x g)(x, y) = f(x) x g(y)``, an (n*m)-valued self-map of the torus."""

    f: NValuedCircleMap
    g: NValuedCircleMap

    @property
    def arity(self) -> int:
        return self.f.n * self.g.n

    def evaluate(self, x, y) -> frozenset:
        return frozenset(itertools.product(evaluate(self.f, x), evaluate(self.g, y)))


@dataclass(frozen=True)
class ProductRegion:
    U: OpenArcSet
    V: OpenArcSet

    @classmethod
    def whole(cls) -> "ProductRegion":
        return cls(OpenArcSet.whole(), OpenArcSet.whole())


@dataclass(frozen=True)
class TorusFixedPoint:
    location: tuple
    slopes: tuple
    local_index: int


def product_map(f: NValuedCircleMap, g: NValuedCircleMap) -> TorusProductMap:
    return TorusProductMap(f, g)


def product_is_split(pm: TorusProductMap) -> bool:
    """f x g splits iff both factors split."""
    return is_split(pm.f) and is_split(pm.g)


def global_selections(pm: TorusProductMap) -> list:
    """Search for global selections of f x g by transporting every branch.

    A branch ``(i, j)`` at the base point extends to a global selection iff
    carrying it around both generating loops of the torus returns it to
    itself.  Loops are followed on strand values, not on stored monodromy.
    """
    return [(i, j) for i in range(pm.f.n) for j in range(pm.g.n)
            if transport(pm.f, i) == i and transport(pm.g, j) == j]


def _cross(p, q):
    return p[0] * q[1] - p[1] * q[0]


def winding_number(vectors) -> int:
    """Winding number about the origin of the closed polygon through ``vectors``."""
    w = 0
    for p, q in zip(vectors, vectors[1:] + vectors[:1]):
        if p[1] <= 0 < q[1] and _cross(p, q) > 0:
            w += 1
        elif q[1] <= 0 < p[1] and _cross(p, q) < 0:
            w -= 1
    return w


def box_index(lam_left, lam_right, mu_left, mu_right) -> int:
    """Index of an isolated fixed point of a product PL map with given one-sided slopes.

    The displacement ``(u, w) -> ((1 - lam) u, (1 - mu) w)`` is linear on each
    quadrant; its winding number is read off an axis-aligned square around
    the point.
    """
    a = {1: 1 - lam_right, -1: 1 - lam_left}
    b = {1: 1 - mu_right, -1: 1 - mu_left}
    if 0 in a.values() or 0 in b.values():
        raise Degenerate("slope 1 next to a torus fixed point")
    square = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
    vecs = [(a[1] * u if u > 0 else a[-1] * u, b[1] * w if w > 0 else b[-1] * w) for u, w in square]
    return winding_number(vecs)


def torus_fixed_points(pm: TorusProductMap) -> list:
    fa, fb = fixed_points(pm.f), fixed_points(pm.g)
    if not (fa.fix_finite and fb.fix_finite):
        raise Degenerate("a factor has degenerate fixed intervals; perturb it first")
    out = []
    for p, q in itertools.product(fa.points, fb.points):
        out.append(TorusFixedPoint((p.location, q.location), (p.slope, q.slope),
                                   box_index(p.slope_left, p.slope, q.slope_left, q.slope)))
    return out


def torus_index_direct(pm: TorusProductMap, region: ProductRegion | None = None) -> int:
    """Sum of 2D local indices over fixed points in U x V, without any 1D index."""
    region = region or ProductRegion.whole()
    if not is_admissible(pm.f, region.U):
        raise NotAdmissible(f"first factor has a fixed point on the boundary of {region.U}")
    if not is_admissible(pm.g, region.V):
        raise NotAdmissible(f"second factor has a fixed point on the boundary of {region.V}")
    return sum(p.local_index for p in torus_fixed_points(pm)
               if region.U.contains(p.location[0]) and region.V.contains(p.location[1]))


@dataclass(frozen=True)
class ProductReport:
    direct: int
    index_f: int
    index_g: int
    perturbed_index_f: int
    perturbed_index_g: int
    direct_unperturbed: int | None = None

    @property
    def passed(self) -> bool:
        stable = (self.index_f == self.perturbed_index_f and self.index_g == self.perturbed_index_g
                  and self.direct_unperturbed in (None, self.direct))
        return stable and self.direct == self.index_f * self.index_g


def _index_both(fmap, region) -> int:
    a, b = index_schirmer(fmap, region), index_crossing(fmap, region)
    if a != b:
        raise AssertionError(f"index algorithms disagree: schirmer={a}, crossing={b}")
    return a


def verify_product_formula(pm: TorusProductMap, region: ProductRegion | None = None) -> ProductReport:
    region = region or ProductRegion.whole()
    f2, _ = fix_finite_perturb(pm.f)
    g2, _ = fix_finite_perturb(pm.g)
    direct = torus_index_direct(TorusProductMap(f2, g2), region)
    unperturbed = None
    if f2 == pm.f and g2 == pm.g:
        unperturbed = torus_index_direct(pm, region)
    return ProductReport(direct, _index_both(pm.f, region.U), _index_both(pm.g, region.V),
                         _index_both(f2, region.U), _index_both(g2, region.V), unperturbed)


@dataclass(frozen=True)
class LefschetzProductReport:
    direct: int
    lefschetz_f: int
    lefschetz_g: int

    @property
    def passed(self) -> bool:
        return self.direct == self.lefschetz_f * self.lefschetz_g


def verify_lefschetz_product(f: NValuedCircleMap, g: NValuedCircleMap) -> LefschetzProductReport:
    f2, _ = fix_finite_perturb(f)
    g2, _ = fix_finite_perturb(g)
    direct = torus_index_direct(TorusProductMap(f2, g2))
    return LefschetzProductReport(direct, lefschetz(f).value, lefschetz(g).value)
