"""Fixed points and the local fixed point index of n-valued circle maps.

Two independent index algorithms live here:

* :func:`index_schirmer` perturbs to a fix-finite map, isolates each fixed
  point in a proper arc, splits the map there and sums the classical index
  of the one selection carrying the fixed point.
* :func:`index_crossing` never perturbs; it reads off the signed number of
  integer crossings of ``s(t) - t`` from the endpoint values of each
  selection over each arc of the region.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import NamedTuple

from .errors import NotAdmissible
from .nmap import NValuedCircleMap, PLFunction, split_on_arc
from .regions import Arc, OpenArcSet, as_fraction, is_integer, mod1

__all__ = [
    "FixedPointRecord", "DegenerateInterval", "FixedPointSet", "FixedArc",
    "fixed_points", "fixed_arcs", "is_fixed", "is_admissible", "perturbation_height",
    "fix_finite_perturb", "isolating_arcs", "index_schirmer", "index_crossing",
    "empty_region_index", "index", "local_index", "ALGORITHMS",
]


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _dist_to_int(x: Fraction) -> Fraction:
    f = mod1(x)
    return min(f, 1 - f)


def local_index(slope_left, slope_right) -> int:
    """Classical index of an isolated PL fixed point with the given one-sided slopes."""
    a, b = _sgn(1 - slope_left), _sgn(1 - slope_right)
    if a == 0 or b == 0:
        raise ValueError("slope 1 at an isolated fixed point")
    return (a + b) // 2


@dataclass(frozen=True)
class FixedPointRecord:
    """An isolated fixed point of one strand.

    ``slope`` is the strand slope just after the point and ``slope_left``
    just before it; they differ only at breakpoints.  A point is
    ``degenerate`` when the graph does not cross the diagonal transversally.
    """

    location: Fraction
    strand: int
    slope: Fraction
    slope_left: Fraction
    local_index: int
    degenerate: bool


class DegenerateInterval(NamedTuple):
    """Segment ``[start, end]`` of strand ``strand`` lying on the diagonal mod 1."""

    strand: int
    start: Fraction
    end: Fraction


class FixedPointSet(NamedTuple):
    points: tuple
    intervals: tuple

    @property
    def fix_finite(self) -> bool:
        return not self.intervals

    def locations(self) -> list:
        return sorted(p.location for p in self.points)


class FixedArc(NamedTuple):
    """Closed circle arc ``[start, start + length]`` of fixed points; length 1 is everything."""

    start: Fraction
    length: Fraction


def fixed_points(fmap: NValuedCircleMap) -> FixedPointSet:
    """Solve ``s_i(t) - t in Z`` segment by segment, exactly.

    Every isolated fixed point of the circle map is reported once, with
    location in [0, 1).  Slope-1 segments lying on the diagonal come back as
    degenerate intervals; their endpoints are not repeated as points.
    """
    inv = fmap.inverse_monodromy()
    points, intervals = [], []
    for i, s in enumerate(fmap.strands):
        segs = list(s.segments())
        for k, (a, va, b, vb) in enumerate(segs):
            lam = (vb - va) / (b - a)
            ga = va - a
            if lam == 1:
                if is_integer(ga):
                    if intervals and intervals[-1].strand == i and intervals[-1].end == a:
                        intervals[-1] = DegenerateInterval(i, intervals[-1].start, b)
                    else:
                        intervals.append(DegenerateInterval(i, a, b))
                continue
            gb = vb - b
            for m in range(ceil(min(ga, gb)), floor(max(ga, gb)) + 1):
                t = a + (m - ga) / (lam - 1)
                if not a <= t < b:
                    continue
                if t == a:
                    if k > 0:
                        left = (segs[k - 1][3] - segs[k - 1][1]) / (segs[k - 1][2] - segs[k - 1][0])
                    else:
                        left = fmap.strands[inv[i]].slope_left(1)
                    if left == 1:
                        continue
                else:
                    left = lam
                idx = local_index(left, lam)
                degenerate = _sgn(1 - left) != _sgn(1 - lam)
                points.append(FixedPointRecord(t, i, lam, left, idx, degenerate))
    points.sort(key=lambda p: p.location)
    return FixedPointSet(tuple(points), tuple(intervals))


def fixed_arcs(fps_or_map) -> list:
    """Merge degenerate intervals into closed circle arcs."""
    fps = fps_or_map if isinstance(fps_or_map, FixedPointSet) else fixed_points(fps_or_map)
    ivs = sorted((iv.start, iv.end) for iv in fps.intervals)
    merged = []
    for a, b in ivs:
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    if len(merged) > 1 and merged[0][0] == 0 and merged[-1][1] == 1:
        first = merged.pop(0)
        last = merged.pop()
        merged.append((last[0], first[1] + 1))
    out = []
    for a, b in merged:
        if b - a >= 1:
            return [FixedArc(Fraction(0), Fraction(1))]
        out.append(FixedArc(a, b - a))
    return sorted(out)


def is_fixed(fmap: NValuedCircleMap, x) -> bool:
    """Whether the circle point ``x`` belongs to its own image."""
    x = mod1(as_fraction(x))
    return any(is_integer(s(x) - x) for s in fmap.strands)


def is_admissible(fmap: NValuedCircleMap, region: OpenArcSet) -> bool:
    """No fixed point (isolated or inside a degenerate interval) on the boundary."""
    return not any(is_fixed(fmap, b) for b in region.boundary())


def _require_admissible(fmap, region):
    for b in region.boundary():
        if is_fixed(fmap, b):
            raise NotAdmissible(f"fixed point {b} lies on the boundary of region {region}")


def perturbation_height(fmap: NValuedCircleMap) -> Fraction:
    """Bump height used by :func:`fix_finite_perturb`.

    A quarter of the smallest of: 1, the minimal strand separation mod 1,
    and the minimal nonzero distance of ``s_i(t) - t`` to Z at breakpoints.
    """
    cands = [Fraction(1)]
    strands = fmap.strands
    for i in range(fmap.n):
        for j in range(i + 1, fmap.n):
            for t in set(strands[i].ts) | set(strands[j].ts):
                cands.append(_dist_to_int(strands[i](t) - strands[j](t)))
    for s in strands:
        for t, v in s.breakpoints:
            d = _dist_to_int(v - t)
            if d:
                cands.append(d)
    return min(cands) / 4


def fix_finite_perturb(fmap: NValuedCircleMap):
    """Replace every diagonal segment by a sign-changing bump.

    On a degenerate segment ``[a, b]`` the strand ``t + m`` becomes the PL
    function through ``t + m + (0, +eps, -eps, 0)`` at ``a, a + w/4, a + 3w/4, b``.
    Returns ``(new_map, homotopy)``; the homotopy is the identity when the map
    is already fix-finite.
    """
    from .homotopy import make_homotopy

    fps = fixed_points(fmap)
    if fps.fix_finite:
        return fmap, make_homotopy(fmap, fmap)
    eps = perturbation_height(fmap)
    strands = list(fmap.strands)
    for i in sorted({iv.strand for iv in fps.intervals}):
        pts = []
        for a, va, b, vb in strands[i].segments():
            pts.append((a, va))
            if vb - va == b - a and is_integer(va - a):
                w = b - a
                pts.append((a + w / 4, va + w / 4 + eps))
                pts.append((a + 3 * w / 4, va + 3 * w / 4 - eps))
        pts.append(strands[i].breakpoints[-1])
        strands[i] = PLFunction(tuple(pts))
    perturbed = NValuedCircleMap(tuple(strands), fmap.monodromy)
    return perturbed, make_homotopy(fmap, perturbed)


def isolating_arcs(locations, region: OpenArcSet) -> list:
    """Pair each fixed point in ``region`` with an isolating proper arc.

    Arcs are bounded by midpoints to the neighbouring fixed points and by the
    region boundary.  Returns ``(arc, x_param)`` with ``x_param`` the lift
    coordinate of the fixed point inside the arc.
    """
    out = []
    if region.whole_circle:
        xs = sorted(set(locations))
        if len(xs) == 1:
            arc = Arc(xs[0] - Fraction(1, 2), 1)
            return [(arc, arc.param(xs[0]))]
        for k, x in enumerate(xs):
            prev = xs[k - 1] if k > 0 else xs[-1] - 1
            nxt = xs[k + 1] if k + 1 < len(xs) else xs[0] + 1
            lo, hi = (prev + x) / 2, (x + nxt) / 2
            arc = Arc(lo, hi - lo)
            out.append((arc, arc.param(x)))
        return out
    for arc in region.arcs:
        ps = sorted(arc.param(x) for x in set(locations) if arc.contains(x))
        for k, p in enumerate(ps):
            lo = (ps[k - 1] + p) / 2 if k > 0 else arc.start
            hi = (p + ps[k + 1]) / 2 if k + 1 < len(ps) else arc.end
            sub = Arc(lo, hi - lo)
            out.append((sub, sub.param(p)))
    return out


def index_schirmer(fmap: NValuedCircleMap, region: OpenArcSet) -> int:
    """Index by perturbation to fix-finite form and local splitting."""
    _require_admissible(fmap, region)
    if region.is_empty:
        return 0
    perturbed, _ = fix_finite_perturb(fmap)
    locs = [p.location for p in fixed_points(perturbed).points]
    total = 0
    for arc, p in isolating_arcs(locs, region):
        carriers = [sel for sel in split_on_arc(perturbed, arc) if is_integer(sel.lift(p) - p)]
        if len(carriers) != 1:
            raise AssertionError(f"expected one fixed selection on {arc}, found {len(carriers)}")
        lift = carriers[0].lift
        total += local_index(lift.slope_left(p), lift.slope_right(p))
    return total


_FAREY_DEPTH = 64


def _cut_point(fmap: NValuedCircleMap) -> Fraction:
    """A deterministic non-fixed point, or 0 if every small-denominator point is fixed."""
    for q in range(1, _FAREY_DEPTH + 1):
        for p in range(q):
            x = Fraction(p, q)
            if x.denominator == q and not is_fixed(fmap, x):
                return x
    return Fraction(0)


def _crossing_count(ga: Fraction, gb: Fraction) -> Fraction:
    """Sum over integers m of (sign(ga - m) - sign(gb - m)) / 2."""
    total = Fraction(0)
    for m in range(floor(min(ga, gb)) - 1, ceil(max(ga, gb)) + 2):
        total += Fraction(_sgn(ga - m) - _sgn(gb - m), 2)
    return total


def index_crossing(fmap: NValuedCircleMap, region: OpenArcSet) -> int:
    """Index from endpoint signs of ``s(t) - t - m`` on each selection of each arc."""
    _require_admissible(fmap, region)
    if region.is_empty:
        return 0
    arcs = [Arc(_cut_point(fmap), 1)] if region.whole_circle else list(region.arcs)
    total = Fraction(0)
    for arc in arcs:
        a, b = arc.start, arc.end
        for sel in split_on_arc(fmap, arc):
            total += _crossing_count(sel.lift(a) - a, sel.lift(b) - b)
    if not is_integer(total):
        raise AssertionError(f"non-integral crossing count {total}")
    return int(total)


def empty_region_index(fmap: NValuedCircleMap) -> int:
    """Index over the empty set; both algorithms must give 0."""
    empty = OpenArcSet.empty()
    a, b = index_schirmer(fmap, empty), index_crossing(fmap, empty)
    if a != 0 or b != 0:
        raise AssertionError(f"empty-region index is ({a}, {b})")
    return 0


ALGORITHMS = {"schirmer": index_schirmer, "crossing": index_crossing}


def index(fmap: NValuedCircleMap, region: OpenArcSet | None = None, algorithm: str = "schirmer") -> int:
    """Local index ``ind_n(f, U)``; ``region=None`` means the whole circle."""
    if region is None:
        region = OpenArcSet.whole()
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}")
    return ALGORITHMS[algorithm](fmap, region)
