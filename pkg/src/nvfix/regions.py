"""Open subsets of the circle R/Z built from finitely many open arcs."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import InvalidMap


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; use Fraction or a 'p/q' string")
    return Fraction(x)


def mod1(x: Fraction) -> Fraction:
    return x - floor(x)


def is_integer(x: Fraction) -> bool:
    return x.denominator == 1


@dataclass(frozen=True)
class Arc:
    """Open arc ``(start, start + length)`` of R/Z, ``start`` in [0, 1), ``0 < length <= 1``.

    A length-1 arc is the circle with the single point ``start`` removed.
    """

    start: Fraction
    length: Fraction

    def __post_init__(self):
        s = as_fraction(self.start)
        L = as_fraction(self.length)
        if not 0 < L <= 1:
            raise InvalidMap(f"arc length must lie in (0, 1], got {L}")
        object.__setattr__(self, "start", mod1(s))
        object.__setattr__(self, "length", L)

    @property
    def end(self) -> Fraction:
        """Right endpoint in lift coordinates (may exceed 1)."""
        return self.start + self.length

    def contains(self, x) -> bool:
        return 0 < mod1(as_fraction(x) - self.start) < self.length

    def param(self, x) -> Fraction:
        """Lift coordinate of circle point ``x`` in ``[start, start + 1)``."""
        return self.start + mod1(as_fraction(x) - self.start)

    def endpoints(self) -> tuple[Fraction, ...]:
        e = mod1(self.end)
        return (self.start,) if e == self.start else (self.start, e)

    def crosses_seam(self) -> bool:
        return self.end > 1

    def __str__(self):
        return f"{self.start}+{self.length}"


@dataclass(frozen=True)
class OpenArcSet:
    """Finite disjoint union of open arcs, or the whole circle.

    Arcs are kept sorted by start point. ``whole_circle`` overrides ``arcs``.
    """

    arcs: tuple[Arc, ...] = ()
    whole_circle: bool = False

    def __post_init__(self):
        if self.whole_circle:
            object.__setattr__(self, "arcs", ())
            return
        arcs = tuple(sorted((a if isinstance(a, Arc) else Arc(*a) for a in self.arcs),
                            key=lambda a: a.start))
        for i, a in enumerate(arcs):
            for b in arcs[i + 1:]:
                if not (mod1(b.start - a.start) >= a.length
                        and mod1(a.start - b.start) >= b.length):
                    raise InvalidMap(f"arcs {a} and {b} overlap")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def whole(cls) -> "OpenArcSet":
        return cls(whole_circle=True)

    @classmethod
    def empty(cls) -> "OpenArcSet":
        return cls(())

    @classmethod
    def of(cls, *pairs) -> "OpenArcSet":
        """``OpenArcSet.of((start, length), ...)``."""
        return cls(tuple(Arc(s, L) for s, L in pairs))

    @property
    def is_empty(self) -> bool:
        return not self.whole_circle and not self.arcs

    def contains(self, x) -> bool:
        if self.whole_circle:
            return True
        return any(a.contains(x) for a in self.arcs)

    def boundary(self) -> tuple[Fraction, ...]:
        if self.whole_circle:
            return ()
        return tuple(sorted({e for a in self.arcs for e in a.endpoints()}))

    def union(self, other: "OpenArcSet") -> "OpenArcSet":
        if self.whole_circle or other.whole_circle:
            raise InvalidMap("union with the whole circle is not a disjoint union")
        return OpenArcSet(self.arcs + other.arcs)

    def to_string(self) -> str:
        if self.whole_circle:
            return "all"
        if not self.arcs:
            return "empty"
        return ",".join(str(a) for a in self.arcs)

    __str__ = to_string
