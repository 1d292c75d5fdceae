"""Straight-line strand homotopies between n-valued circle maps."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .errors import DistinctnessBroken, MonodromyMismatch, NotAdmissible
from .nmap import NValuedCircleMap, PLFunction
from .regions import OpenArcSet, as_fraction


@dataclass(frozen=True)
class StrandHomotopy:
    """``H_lam = (1 - lam) * source + lam * target`` strand by strand.

    Only build these through :func:`make_homotopy`, which certifies that
    every intermediate map is a valid n-valued map.
    """

    source: NValuedCircleMap
    target: NValuedCircleMap

    def grid(self, i: int) -> list:
        return sorted(set(self.source.strands[i].ts) | set(self.target.strands[i].ts))

    def at(self, lam) -> NValuedCircleMap:
        lam = as_fraction(lam)
        if not 0 <= lam <= 1:
            raise ValueError("homotopy parameter must lie in [0, 1]")
        strands = []
        for i, (s, t) in enumerate(zip(self.source.strands, self.target.strands)):
            pts = tuple((u, (1 - lam) * s(u) + lam * t(u)) for u in self.grid(i))
            strands.append(PLFunction(pts).simplified())
        return NValuedCircleMap(tuple(strands), self.source.monodromy)

    def is_identity(self) -> bool:
        return self.source == self.target


def _linear_roots(f0: Fraction, f1: Fraction, m: int) -> list:
    """Roots in [0, 1] of ``lam -> (1 - lam) f0 + lam f1 - m``."""
    if f0 == f1:
        return []
    r = (m - f0) / (f1 - f0)
    return [r] if 0 <= r <= 1 else []


def _collision_set(corners, m: int) -> list:
    """Closed lambda-intervals where an integer ``m`` is hit on one rectangle.

    ``corners = (Da0, Da1, Db0, Db1)`` are the strand differences at the two
    ends ``a, b`` of a refinement piece for lam = 0 and lam = 1.  The
    difference is bilinear in (lam, t), so at fixed lam it is hit iff ``m``
    lies between its values at ``t = a`` and ``t = b``.
    """
    da0, da1, db0, db1 = corners
    cuts = sorted({Fraction(0), Fraction(1), *_linear_roots(da0, da1, m), *_linear_roots(db0, db1, m)})

    def hit(lam):
        va = (1 - lam) * da0 + lam * da1 - m
        vb = (1 - lam) * db0 + lam * db1 - m
        return va * vb <= 0

    pieces = []
    probes = []
    for u, v in zip(cuts, cuts[1:]):
        probes += [(u, u), (u, v)]
    probes.append((cuts[-1], cuts[-1]))
    for u, v in probes:
        if hit((u + v) / 2):
            if pieces and pieces[-1][1] >= u:
                pieces[-1] = (pieces[-1][0], max(pieces[-1][1], v))
            else:
                pieces.append((u, v))
    return pieces


def make_homotopy(source: NValuedCircleMap, target: NValuedCircleMap) -> StrandHomotopy:
    """Straight-line homotopy with an exact certificate of distinctness for all lam."""
    if source.n != target.n:
        raise MonodromyMismatch(f"cannot connect a {source.n}-valued map to a {target.n}-valued map")
    if source.monodromy != target.monodromy:
        raise MonodromyMismatch(f"monodromy {source.monodromy} != {target.monodromy}")
    for i in range(source.n):
        if source.closure_offset(i) != target.closure_offset(i):
            raise MonodromyMismatch(
                f"strand {i} closes with offset {source.closure_offset(i)} in the source "
                f"but {target.closure_offset(i)} in the target")
    h = StrandHomotopy(source, target)
    worst = None
    for i in range(source.n):
        for j in range(i + 1, source.n):
            si, sj, ti, tj = source.strands[i], source.strands[j], target.strands[i], target.strands[j]
            grid = sorted(set(si.ts) | set(sj.ts) | set(ti.ts) | set(tj.ts))
            for a, b in zip(grid, grid[1:]):
                corners = (si(a) - sj(a), ti(a) - tj(a), si(b) - sj(b), ti(b) - tj(b))
                for m in range(ceil(min(corners)), floor(max(corners)) + 1):
                    for lam_iv in _collision_set(corners, m):
                        if worst is None or lam_iv < worst[0]:
                            worst = (lam_iv, (i, j), (a, b))
    if worst is not None:
        (l0, l1), pair, (a, b) = worst
        where = f"lam = {l0}" if l0 == l1 else f"lam in [{l0}, {l1}]"
        raise DistinctnessBroken(f"strands {pair[0]} and {pair[1]} collide at {where} "
                                 f"for t in [{a}, {b}]", (l0, l1), pair)
    return h


def homotopy_is_admissible(h: StrandHomotopy, region: OpenArcSet) -> bool:
    """True iff no intermediate map has a fixed point on the boundary of ``region``.

    At a boundary point ``b`` the displacement ``H_lam(b) - b`` of each strand is
    linear in lam, so it meets an integer iff one lies between its end values.
    """
    for b in region.boundary():
        for s, t in zip(h.source.strands, h.target.strands):
            e0, e1 = s(b) - b, t(b) - b
            if ceil(min(e0, e1)) <= max(e0, e1):
                return False
    return True


@dataclass(frozen=True)
class HomotopyReport:
    region: str
    source: tuple
    target: tuple

    @property
    def passed(self) -> bool:
        return self.source == self.target and self.source[0] == self.source[1]


def verify_homotopy_invariance(h: StrandHomotopy, region: OpenArcSet) -> HomotopyReport:
    """Index at both ends of an admissible homotopy, under both algorithms."""
    from .index import index_crossing, index_schirmer

    if not homotopy_is_admissible(h, region):
        raise NotAdmissible(f"homotopy passes a fixed point over the boundary of {region}")
    src = (index_schirmer(h.source, region), index_crossing(h.source, region))
    tgt = (index_schirmer(h.target, region), index_crossing(h.target, region))
    return HomotopyReport(str(region), src, tgt)
