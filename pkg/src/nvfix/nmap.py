"""Piecewise-linear n-valued self-maps of the circle R/Z.

A map is stored as ``n`` strand lifts over the fundamental domain [0, 1]
together with a monodromy permutation recording how strand ends at t = 1
glue to strand starts at t = 0.  All coordinates are exact fractions.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidMap, NotSplit
from .regions import Arc, OpenArcSet, as_fraction, is_integer, mod1

__all__ = [
    "PLFunction", "NValuedCircleMap", "Violation", "ValidationReport", "Selection",
    "validate", "evaluate", "total_degree", "is_split", "split", "split_on_arc",
    "continue_strand", "constant_map", "linear_map", "rotate", "relabel", "transport",
    "shift_strands", "CircleHomeomorphism", "conjugate",
]


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function given by its breakpoints ``(t, value)``.

    The domain is ``[breakpoints[0][0], breakpoints[-1][0]]``.
    """

    breakpoints: tuple
    _ts: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple((as_fraction(t), as_fraction(v)) for t, v in self.breakpoints)
        if len(pts) < 2:
            raise InvalidMap("a PL function needs at least two breakpoints")
        ts = tuple(t for t, _ in pts)
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise InvalidMap(f"breakpoint parameters must increase strictly: {ts}")
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "_ts", ts)

    @classmethod
    def linear(cls, t0, v0, t1, v1) -> "PLFunction":
        return cls(((t0, v0), (t1, v1)))

    @property
    def start(self) -> Fraction:
        return self._ts[0]

    @property
    def end(self) -> Fraction:
        return self._ts[-1]

    @property
    def ts(self) -> tuple:
        return self._ts

    def __call__(self, t) -> Fraction:
        t = as_fraction(t)
        ts = self._ts
        if not ts[0] <= t <= ts[-1]:
            raise ValueError(f"{t} outside domain [{ts[0]}, {ts[-1]}]")
        k = bisect_right(ts, t) - 1
        if k == len(ts) - 1:
            return self.breakpoints[-1][1]
        (t0, v0), (t1, v1) = self.breakpoints[k], self.breakpoints[k + 1]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def segments(self):
        """Yield ``(t0, v0, t1, v1)`` for each linear piece."""
        for (t0, v0), (t1, v1) in zip(self.breakpoints, self.breakpoints[1:]):
            yield t0, v0, t1, v1

    def slope_right(self, t) -> Fraction:
        ts = self._ts
        k = bisect_right(ts, t) - 1
        if k >= len(ts) - 1 or k < 0:
            raise ValueError(f"no segment to the right of {t}")
        (t0, v0), (t1, v1) = self.breakpoints[k], self.breakpoints[k + 1]
        return (v1 - v0) / (t1 - t0)

    def slope_left(self, t) -> Fraction:
        ts = self._ts
        k = bisect_left(ts, t)
        if k <= 0 or k > len(ts) - 1:
            raise ValueError(f"no segment to the left of {t}")
        (t0, v0), (t1, v1) = self.breakpoints[k - 1], self.breakpoints[k]
        return (v1 - v0) / (t1 - t0)

    def restrict(self, a, b) -> "PLFunction":
        a, b = as_fraction(a), as_fraction(b)
        if not (self.start <= a < b <= self.end):
            raise ValueError(f"[{a}, {b}] is not a subinterval of the domain")
        inner = [(t, v) for t, v in self.breakpoints if a < t < b]
        return PLFunction(((a, self(a)), *inner, (b, self(b))))

    def affine(self, t_scale=1, t_shift=0, v_scale=1, v_shift=0) -> "PLFunction":
        """Reparametrize as ``t -> t_scale*t + t_shift`` and ``v -> v_scale*v + v_shift``."""
        if t_scale <= 0:
            raise ValueError("t_scale must be positive")
        return PLFunction(tuple((t * t_scale + t_shift, v * v_scale + v_shift)
                                for t, v in self.breakpoints))

    def then(self, other: "PLFunction") -> "PLFunction":
        """Concatenate with a function whose domain starts where this one ends."""
        if other.start != self.end or other.breakpoints[0][1] != self.breakpoints[-1][1]:
            raise ValueError("pieces do not join continuously")
        return PLFunction(self.breakpoints + other.breakpoints[1:])

    def simplified(self) -> "PLFunction":
        """Drop breakpoints where the slope does not change."""
        pts = [self.breakpoints[0]]
        for cur, nxt in zip(self.breakpoints[1:], self.breakpoints[2:]):
            (t0, v0), (t1, v1), (t2, v2) = pts[-1], cur, nxt
            if (v1 - v0) * (t2 - t1) != (v2 - v1) * (t1 - t0):
                pts.append(cur)
        pts.append(self.breakpoints[-1])
        return PLFunction(tuple(pts))

    def solve(self, level) -> list:
        """All ``t`` with ``self(t) == level``; constant pieces at that level are skipped."""
        level = as_fraction(level)
        out = []
        for t0, v0, t1, v1 in self.segments():
            if v0 == v1:
                continue
            if min(v0, v1) <= level <= max(v0, v1):
                t = t0 + (level - v0) * (t1 - t0) / (v1 - v0)
                if not out or out[-1] != t:
                    out.append(t)
        return out


@dataclass(frozen=True)
class NValuedCircleMap:
    """An n-valued map S^1 -> D_n(S^1) as strand lifts over [0, 1].

    ``monodromy[i]`` is the strand whose value at t = 0 agrees (mod 1) with
    the value of strand ``i`` at t = 1.  Structural checks happen here;
    the distinctness and closure conditions are checked by :func:`validate`.
    """

    strands: tuple
    monodromy: tuple = None

    def __post_init__(self):
        strands = tuple(s if isinstance(s, PLFunction) else PLFunction(tuple(s))
                        for s in self.strands)
        if not strands:
            raise InvalidMap("an n-valued map needs n >= 1 strands")
        for i, s in enumerate(strands):
            if s.start != 0 or s.end != 1:
                raise InvalidMap(f"strand {i} must be defined on [0, 1], got [{s.start}, {s.end}]")
        n = len(strands)
        sigma = tuple(range(n)) if self.monodromy is None else tuple(int(k) for k in self.monodromy)
        if sorted(sigma) != list(range(n)):
            raise InvalidMap(f"monodromy {sigma} is not a permutation of 0..{n - 1}")
        object.__setattr__(self, "strands", strands)
        object.__setattr__(self, "monodromy", sigma)

    @property
    def n(self) -> int:
        return len(self.strands)

    def closure_offset(self, i: int) -> Fraction:
        """``s_i(1) - s_sigma(i)(0)``; an integer for valid maps."""
        return self.strands[i](1) - self.strands[self.monodromy[i]](0)

    def inverse_monodromy(self) -> tuple:
        inv = [0] * self.n
        for i, j in enumerate(self.monodromy):
            inv[j] = i
        return tuple(inv)

    def __call__(self, t) -> frozenset:
        return evaluate(self, t)


class Violation(NamedTuple):
    kind: str
    strands: tuple
    interval: tuple | None
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def _refinement(*fs: PLFunction) -> list:
    return sorted({t for f in fs for t in f.ts})


def _integer_hits(h0: Fraction, h1: Fraction, a: Fraction, b: Fraction):
    """Parameters in [a, b] where the linear function (a, h0)-(b, h1) is an integer.

    Returns ``None`` when there are none, ``(a, b)`` if the function is a
    constant integer, otherwise the first hitting parameter as ``(t, t)``.
    """
    lo, hi = min(h0, h1), max(h0, h1)
    m = ceil(lo)
    if m > hi:
        return None
    if h0 == h1:
        return (a, b)
    t = a + (m - h0) * (b - a) / (h1 - h0)
    return (t, t)


def validate(fmap: NValuedCircleMap) -> ValidationReport:
    """Check distinctness of strands mod 1 and closure across the seam, exactly."""
    out = []
    strands = fmap.strands
    for i in range(fmap.n):
        for j in range(i + 1, fmap.n):
            grid = _refinement(strands[i], strands[j])
            for a, b in zip(grid, grid[1:]):
                h0 = strands[i](a) - strands[j](a)
                h1 = strands[i](b) - strands[j](b)
                hit = _integer_hits(h0, h1, a, b)
                if hit is None:
                    continue
                if hit[0] != hit[1] and a == 0 and b == 1:
                    where = "at all t"
                else:
                    where = f"at t in [{hit[0]}, {hit[1]}]"
                out.append(Violation("Distinctness", (i, j), hit,
                                     f"strands {i} and {j} coincide mod 1 {where} "
                                     f"(segment [{a}, {b}])"))
                break
    for i in range(fmap.n):
        off = fmap.closure_offset(i)
        if not is_integer(off):
            j = fmap.monodromy[i]
            out.append(Violation("Closure", (i, j), None,
                                 f"Closure for strand {i}: s_{i}(1) - s_{j}(0) = {off} is not an integer"))
    return ValidationReport(tuple(out))


def evaluate(fmap: NValuedCircleMap, t) -> frozenset:
    """The n-point set f(t) as circle coordinates in [0, 1)."""
    t = as_fraction(t)
    if not 0 <= t < 1:
        raise ValueError(f"circle parameter must lie in [0, 1), got {t}")
    return frozenset(mod1(s(t)) for s in fmap.strands)


def total_degree(fmap: NValuedCircleMap) -> int:
    """Sum of the winding gains of all strands over [0, 1]."""
    d = sum((s(1) - s(0) for s in fmap.strands), Fraction(0))
    if not is_integer(d):
        raise InvalidMap(f"total degree {d} is not an integer; map fails closure")
    return int(d)


def is_split(fmap: NValuedCircleMap) -> bool:
    """True iff the strand monodromy is trivial (n global selections exist)."""
    return all(i == j for i, j in enumerate(fmap.monodromy))


def split(fmap: NValuedCircleMap) -> list:
    """The global splitting ``f = {f_1, ..., f_n}`` as 1-valued maps."""
    if not is_split(fmap):
        raise NotSplit(f"monodromy {fmap.monodromy} is not the identity")
    return [NValuedCircleMap((s,)) for s in fmap.strands]


def continue_strand(fmap: NValuedCircleMap, i: int, t0, t1) -> PLFunction:
    """Continue strand ``i`` from lift parameter ``t0`` to ``t1`` across any number of seams.

    ``t0`` may be any real; strand ``i`` is the strand through ``t0 mod 1``.
    Crossing t = 1 moves to strand ``monodromy[i]`` shifted by the closure offset.
    """
    t0, t1 = as_fraction(t0), as_fraction(t1)
    if t1 <= t0:
        raise ValueError("empty continuation interval")
    shift_t = Fraction(floor(t0))
    shift_v = Fraction(0)
    cur = i
    local = t0 - shift_t
    result = None
    while True:
        stop = min(Fraction(1), t1 - shift_t)
        if stop > local:
            piece = fmap.strands[cur].restrict(local, stop).affine(t_shift=shift_t, v_shift=shift_v)
            result = piece if result is None else result.then(piece)
        if shift_t + 1 >= t1:
            break
        shift_v += fmap.closure_offset(cur)
        cur = fmap.monodromy[cur]
        shift_t += 1
        local = Fraction(0)
    return result


class Selection(NamedTuple):
    """A continuous selection over an arc: visited strand labels and its lift."""

    strands: tuple
    lift: PLFunction


def split_on_arc(fmap: NValuedCircleMap, arc) -> list:
    """Split the map over a proper open arc into n continuous selections.

    Selection ``k`` starts on strand ``k`` at the arc's start and is
    continued across the seam through the monodromy when the arc crosses it.
    Lifts are parametrized by the arc's lift coordinates ``[start, start + length]``.
    """
    if isinstance(arc, OpenArcSet):
        if arc.whole_circle or len(arc.arcs) != 1:
            raise ValueError("split_on_arc needs a single proper arc, not the whole circle")
        arc = arc.arcs[0]
    if not isinstance(arc, Arc):
        arc = Arc(*arc)
    out = []
    for k in range(fmap.n):
        labels = (k, fmap.monodromy[k]) if arc.crosses_seam() else (k,)
        out.append(Selection(labels, continue_strand(fmap, k, arc.start, arc.end)))
    return out


def transport(fmap: NValuedCircleMap, i: int) -> int:
    """Follow strand ``i`` once around the circle and return the strand it lands on.

    Decided from strand values only, ignoring the stored monodromy.
    """
    end = mod1(fmap.strands[i](1))
    hits = [j for j, s in enumerate(fmap.strands) if mod1(s(0)) == end]
    if len(hits) != 1:
        raise InvalidMap(f"strand {i} does not close up on a unique strand")
    return hits[0]


def constant_map(values: Iterable) -> NValuedCircleMap:
    """Constant n-valued map with the given distinct values."""
    vals = [mod1(as_fraction(v)) for v in values]
    if not vals:
        raise InvalidMap("constant map needs at least one value")
    if len(set(vals)) != len(vals):
        raise InvalidMap(f"constant map values must be distinct mod 1: {vals}")
    return NValuedCircleMap(tuple(PLFunction.linear(0, v, 1, v) for v in vals))


def linear_map(n: int, d: int) -> NValuedCircleMap:
    """Strands ``s_k(t) = (d*t + k)/n`` with monodromy ``k -> k + d mod n``."""
    if n < 1:
        raise InvalidMap("n must be positive")
    strands = tuple(PLFunction.linear(0, Fraction(k, n), 1, Fraction(d + k, n)) for k in range(n))
    return NValuedCircleMap(strands, tuple((k + d) % n for k in range(n)))


def rotate(fmap: NValuedCircleMap, c) -> NValuedCircleMap:
    """Post-compose with the rotation ``y -> y + c``."""
    c = as_fraction(c)
    return NValuedCircleMap(tuple(s.affine(v_shift=c) for s in fmap.strands), fmap.monodromy)


def relabel(fmap: NValuedCircleMap, perm: Sequence[int]) -> NValuedCircleMap:
    """Move strand ``i`` to position ``perm[i]`` and conjugate the monodromy."""
    n = fmap.n
    strands = [None] * n
    sigma = [0] * n
    for i in range(n):
        strands[perm[i]] = fmap.strands[i]
        sigma[perm[i]] = perm[fmap.monodromy[i]]
    return NValuedCircleMap(tuple(strands), tuple(sigma))


def shift_strands(fmap: NValuedCircleMap, offsets: Sequence) -> NValuedCircleMap:
    """Add an integer to each strand lift; the circle map is unchanged."""
    return NValuedCircleMap(tuple(s.affine(v_shift=as_fraction(o))
                                  for s, o in zip(fmap.strands, offsets)), fmap.monodromy)


@dataclass(frozen=True)
class CircleHomeomorphism:
    """Orientation-preserving PL homeomorphism of R/Z given by a lift on [0, 1].

    The lift must increase strictly and satisfy ``lift(1) = lift(0) + 1``;
    it is extended to R by ``phi(x + 1) = phi(x) + 1``.
    """

    lift: PLFunction

    def __post_init__(self):
        lift = self.lift if isinstance(self.lift, PLFunction) else PLFunction(tuple(self.lift))
        if lift.start != 0 or lift.end != 1 or lift(1) - lift(0) != 1:
            raise InvalidMap("homeomorphism lift must map [0, 1] onto [c, c + 1]")
        if any(v1 <= v0 for _, v0, _, v1 in lift.segments()):
            raise InvalidMap("homeomorphism lift must be strictly increasing")
        object.__setattr__(self, "lift", lift)

    @classmethod
    def rotation(cls, c) -> "CircleHomeomorphism":
        c = as_fraction(c)
        return cls(PLFunction.linear(0, c, 1, c + 1))

    @classmethod
    def identity(cls) -> "CircleHomeomorphism":
        return cls.rotation(0)

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        k = floor(x)
        return self.lift(x - k) + k

    def inverse(self, y) -> Fraction:
        y = as_fraction(y)
        c = self.lift(0)
        k = floor(y - c)
        inv = PLFunction(tuple((v, t) for t, v in self.lift.breakpoints))
        return inv(y - k) + k

    def image(self, region: OpenArcSet) -> OpenArcSet:
        if region.whole_circle:
            return region
        return OpenArcSet(tuple(Arc(mod1(self(a.start)), self(a.end) - self(a.start))
                                for a in region.arcs))


def conjugate(fmap: NValuedCircleMap, phi: CircleHomeomorphism) -> NValuedCircleMap:
    """The n-valued map ``phi o f o phi^-1``, exactly."""
    t0 = phi.inverse(0)
    kinks = phi.lift.ts
    strands = []
    for j in range(fmap.n):
        branch = continue_strand(fmap, j, t0, t0 + 1)
        ts = set(branch.ts)
        ts |= {t + z for t in kinks for z in range(floor(t0) - 1, floor(t0) + 3) if t0 < t + z < t0 + 1}
        lo = min(v for _, v in branch.breakpoints)
        hi = max(v for _, v in branch.breakpoints)
        for y in kinks:
            for z in range(floor(lo - y) - 1, ceil(hi - y) + 2):
                if lo <= y + z <= hi:
                    ts.update(branch.solve(y + z))
        pts = tuple((phi(t), phi(branch(t))) for t in sorted(ts) if t0 <= t <= t0 + 1)
        strands.append(PLFunction(pts).simplified())
    return NValuedCircleMap(tuple(strands), fmap.monodromy)
