"""Cyclic covers of the circle, lifts of n-valued maps and the deck action."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidMap, NoLiftExists, NotAdmissible
from .index import index_crossing, index_schirmer, is_admissible
from .lefschetz import lefschetz
from .nmap import NValuedCircleMap, PLFunction, continue_strand, evaluate, validate
from .regions import Arc, OpenArcSet, as_fraction, mod1

DEFAULT_MAX_LIFT_ENUM = 4096


@dataclass(frozen=True)
class CyclicCover:
    """The k-fold cover ``p(u) = k*u mod 1`` with deck group Z/k."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("fold count must be positive")

    def project(self, u) -> Fraction:
        return mod1(self.k * as_fraction(u))

    def preimage(self, region: OpenArcSet) -> OpenArcSet:
        if region.whole_circle:
            return region
        k = self.k
        return OpenArcSet(tuple(Arc((a.start + j) / k, a.length / k)
                                for a in region.arcs for j in range(k)))


@dataclass(frozen=True)
class LiftedMap:
    map: NValuedCircleMap
    cover: CyclicCover
    base: NValuedCircleMap

    def key(self) -> frozenset:
        """Behavioural identity: strands normalized to start in [0, 1)."""
        return _strand_key(self.map)


def _normalize(s: PLFunction) -> PLFunction:
    return s.affine(v_shift=-(s(0) - mod1(s(0))))


def _strand_key(fmap: NValuedCircleMap) -> frozenset:
    return frozenset(_normalize(s).simplified().breakpoints for s in fmap.strands)


def _close_up(strands) -> NValuedCircleMap | None:
    """Glue strand ends to strand starts mod 1, or ``None`` if they do not match."""
    starts = {mod1(s(0)): j for j, s in enumerate(strands)}
    sigma = []
    for s in strands:
        j = starts.get(mod1(s(1)))
        if j is None:
            return None
        sigma.append(j)
    if len(set(sigma)) != len(sigma):
        return None
    return NValuedCircleMap(tuple(strands), tuple(sigma))


def lift_map(base: NValuedCircleMap, cover: CyclicCover,
             max_enum: int = DEFAULT_MAX_LIFT_ENUM) -> list:
    """All lifts of ``base`` through ``cover`` by exhaustive sheet choice.

    Each strand is continued over ``k`` turns of the base circle and divided
    by ``k``; the starting sheet of every strand is chosen independently and
    a choice survives when the endpoint configuration closes up.
    """
    k, n = cover.k, base.n
    if k ** n > max_enum:
        raise ValueError(f"{k}^{n} sheet choices exceed the enumeration limit {max_enum}")
    paths = [continue_strand(base, i, 0, k) for i in range(n)]
    lifts = []
    for sheets in itertools.product(range(k), repeat=n):
        strands = [_normalize(p.affine(t_scale=Fraction(1, k), v_shift=j)
                              .affine(v_scale=Fraction(1, k)).simplified())
                   for p, j in zip(paths, sheets)]
        cand = _close_up(strands)
        if cand is not None and validate(cand).ok:
            lifts.append(LiftedMap(cand, cover, base))
    return lifts


def deck_act(j: int, lift: LiftedMap) -> LiftedMap:
    """Post-compose the lift with the deck translation ``u -> u + j/k``."""
    k = lift.cover.k
    shift = Fraction(j % k, k)
    moved = NValuedCircleMap(tuple(s.affine(v_shift=shift) for s in lift.map.strands),
                             lift.map.monodromy)
    return LiftedMap(moved, lift.cover, lift.base)


def commutes(lift: LiftedMap, u) -> bool:
    """Check ``p(lift(u)) == base(p(u))`` as sets at one cover point."""
    u = as_fraction(u)
    cover = lift.cover
    return frozenset(cover.project(y) for y in evaluate(lift.map, u)) == evaluate(lift.base, cover.project(u))


@dataclass(frozen=True)
class AveragingReport:
    k: int
    base_index: int
    per_translate: tuple
    deck_sum: int

    @property
    def divisible(self) -> bool:
        return self.deck_sum % self.k == 0

    @property
    def passed(self) -> bool:
        return self.divisible and self.deck_sum // self.k == self.base_index


def _both(fmap, region) -> int:
    a, b = index_schirmer(fmap, region), index_crossing(fmap, region)
    if a != b:
        raise AssertionError(f"index algorithms disagree: schirmer={a}, crossing={b}")
    return a


def verify_averaging(base: NValuedCircleMap, cover: CyclicCover, region: OpenArcSet,
                     lifts: list | None = None) -> AveragingReport:
    """Base index versus the deck-group average over the preimage region."""
    if not is_admissible(base, region):
        raise NotAdmissible(f"({region}) is not admissible for the base map")
    lifts = lift_map(base, cover) if lifts is None else lifts
    if not lifts:
        raise NoLiftExists(f"no lift through the {cover.k}-fold cover")
    lifted_region = cover.preimage(region)
    per = []
    for j in range(cover.k):
        moved = deck_act(j, lifts[0])
        if not is_admissible(moved.map, lifted_region):
            raise NotAdmissible(f"deck translate {j} is not admissible on the preimage")
        per.append(_both(moved.map, lifted_region))
    return AveragingReport(cover.k, _both(base, region), tuple(per), sum(per))


@dataclass(frozen=True)
class LefschetzAveragingReport:
    k: int
    base: int
    per_translate: tuple

    @property
    def passed(self) -> bool:
        total = sum(self.per_translate)
        return total % self.k == 0 and total // self.k == self.base


def verify_lefschetz_averaging(base: NValuedCircleMap, cover: CyclicCover,
                               lifts: list | None = None) -> LefschetzAveragingReport:
    lifts = lift_map(base, cover) if lifts is None else lifts
    if not lifts:
        raise NoLiftExists(f"no lift through the {cover.k}-fold cover")
    per = tuple(lefschetz(deck_act(j, lifts[0]).map).value for j in range(cover.k))
    return LefschetzAveragingReport(cover.k, lefschetz(base).value, per)


def deck_orbits(lifts: list) -> list:
    """Partition lifts into deck orbits (lists of keys)."""
    if not lifts:
        return []
    k = lifts[0].cover.k
    keys = {lift.key(): lift for lift in lifts}
    seen, orbits = set(), []
    for key, lift in keys.items():
        if key in seen:
            continue
        orbit = {deck_act(j, lift).key() for j in range(k)}
        if not orbit <= keys.keys():
            raise InvalidMap("lift list is not closed under the deck action")
        seen |= orbit
        orbits.append(sorted(orbit, key=repr))
    return orbits
