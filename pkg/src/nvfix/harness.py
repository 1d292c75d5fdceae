"""Axiom test bench for candidate index functions.

A candidate is any pure function ``(map, region) -> int``.  Suites run it
over a seeded corpus of admissible pairs and record one entry per check;
nothing here raises on a failed check.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import DistinctnessBroken
from .homotopy import StrandHomotopy, homotopy_is_admissible, make_homotopy
from .index import (
    fix_finite_perturb,
    fixed_arcs,
    fixed_points,
    index_crossing,
    index_schirmer,
    is_admissible,
    local_index,
)
from .mapfile import format_region, map_digest
from .nmap import (
    CircleHomeomorphism,
    NValuedCircleMap,
    PLFunction,
    constant_map,
    conjugate,
    evaluate,
    is_split,
    linear_map,
    relabel,
    rotate,
    split_on_arc,
    total_degree,
    transport,
)
from .regions import Arc, OpenArcSet, is_integer, mod1

DEFAULT_MAX_STRANDS = 4
DEFAULT_MAX_BREAKPOINTS = 8
DEFAULT_MAX_DENOMINATOR = 64


@dataclass(frozen=True)
class GeneratorConfig:
    max_strands: int = DEFAULT_MAX_STRANDS
    max_breakpoints: int = DEFAULT_MAX_BREAKPOINTS
    max_denominator: int = DEFAULT_MAX_DENOMINATOR

    def __post_init__(self):
        if self.max_strands < 1 or self.max_breakpoints < 2 or self.max_denominator < 2:
            raise ValueError("generator limits need max_strands >= 1, max_breakpoints >= 2, "
                             "max_denominator >= 2")


DEFAULT_CONFIG = GeneratorConfig()


@dataclass(frozen=True)
class CandidateIndexFunction:
    name: str
    fn: Callable

    def __call__(self, fmap, region) -> int:
        return self.fn(fmap, region)


SCHIRMER = CandidateIndexFunction("index_schirmer", index_schirmer)
CROSSING = CandidateIndexFunction("index_crossing", index_crossing)

NEGATIVE_CONTROLS = (
    CandidateIndexFunction("zero", lambda f, U: 0),
    CandidateIndexFunction("total_degree", lambda f, U: total_degree(f)),
    CandidateIndexFunction("sign_flipped", lambda f, U: -index_schirmer(f, U)),
)
PLUS_ONE = CandidateIndexFunction("plus_one", lambda f, U: index_schirmer(f, U) + 1)


@dataclass(frozen=True)
class Case:
    case_id: int
    map: NValuedCircleMap
    region: OpenArcSet
    homotopy: StrandHomotopy | None = None


@dataclass(frozen=True)
class AdmissibleCorpus:
    seed: int
    cases: tuple

    def __len__(self):
        return len(self.cases)

    def __iter__(self):
        return iter(self.cases)


@dataclass(frozen=True)
class Entry:
    suite: str
    case_id: str
    inputs: dict
    expected: object
    got: object
    passed: bool

    def as_dict(self) -> dict:
        return {"suite": self.suite, "case_id": self.case_id, "inputs": self.inputs,
                "expected": self.expected, "got": self.got, "pass": self.passed}


@dataclass
class SuiteReport:
    suite: str
    candidate: str
    entries: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if not e.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def add(self, case_id, inputs, expected, got, passed=None):
        ok = expected == got if passed is None else passed
        self.entries.append(Entry(self.suite, str(case_id), inputs, expected, got, bool(ok)))


def _inputs(*maps, region=None, **extra) -> dict:
    out = {"maps": [map_digest(m) for m in maps]}
    if region is not None:
        out["region"] = format_region(region)
    out.update(extra)
    return out


# ---------------------------------------------------------------- generators

def case_rng(seed: int, tag: str, case_id: int) -> random.Random:
    return random.Random(f"{seed}:{tag}:{case_id}")


def random_rational(rng: random.Random, lo, hi, max_den: int = DEFAULT_MAX_DENOMINATOR) -> Fraction:
    """Uniform-ish rational strictly inside (lo, hi) with denominator at most ``max_den``."""
    lo, hi = Fraction(lo), Fraction(hi)
    for _ in range(64):
        q = rng.randint(1, max_den)
        p_lo = int(lo * q) - 1
        p_hi = int(hi * q) + 1
        ps = [p for p in range(p_lo, p_hi + 1) if lo < Fraction(p, q) < hi]
        if ps:
            return Fraction(rng.choice(ps), q)
    return (lo + hi) / 2


def random_pl_map(rng: random.Random, max_strands: int = DEFAULT_MAX_STRANDS,
                  max_breakpoints: int = DEFAULT_MAX_BREAKPOINTS,
                  max_den: int = DEFAULT_MAX_DENOMINATOR) -> NValuedCircleMap:
    """Random valid PL map: a linear map plus bounded PL noise.

    The noise is kept below ``1/(2n)`` in absolute value, so strands stay
    distinct, and matches across the seam so closure holds.  Some maps get
    segments lying exactly on the diagonal.
    """
    n = rng.randint(1, max_strands)
    degenerate = rng.random() < 0.2
    d = n if degenerate else rng.randint(-6, 6)
    base = linear_map(n, d)
    sigma = base.monodromy
    bound = Fraction(1, 2 * n)
    ts = sorted({random_rational(rng, 0, 1, max_den) for _ in range(rng.randint(0, max_breakpoints - 2))})
    grid = [Fraction(0), *ts, Fraction(1)]

    def noise():
        return random_rational(rng, -bound, bound, max_den) if rng.random() < 0.8 else Fraction(0)

    starts = [noise() for _ in range(n)]
    strands = []
    for i in range(n):
        vals = [starts[i], *(noise() for _ in ts), starts[sigma[i]]]
        strands.append(vals)
    if degenerate:
        # strand 0 of linear_map(n, n) is t itself; zero noise on a run of grid points
        lo = rng.randrange(len(grid) - 1)
        hi = rng.randrange(lo + 1, len(grid))
        if rng.random() < 0.25:
            lo, hi = 0, len(grid) - 1
        for k in range(lo, hi + 1):
            strands[0][k] = Fraction(0)
        if lo == 0 or hi == len(grid) - 1:
            strands[0][0] = strands[0][-1] = starts[0] = Fraction(0)
    fmap = NValuedCircleMap(tuple(
        PLFunction(tuple((t, base.strands[i](t) + strands[i][k]) for k, t in enumerate(grid)))
        for i in range(n)), sigma)
    perm = list(range(n))
    rng.shuffle(perm)
    fmap = relabel(fmap, perm)
    if not degenerate and rng.random() < 0.3:
        fmap = rotate(fmap, random_rational(rng, 0, 1, max_den))
    return fmap


def random_constant_map(rng: random.Random, max_strands: int = DEFAULT_MAX_STRANDS,
                        max_den: int = DEFAULT_MAX_DENOMINATOR) -> NValuedCircleMap:
    n = rng.randint(1, max_strands)
    vals = set()
    while len(vals) < n:
        vals.add(Fraction(rng.randrange(max_den), max_den))
    return constant_map(sorted(vals))


def random_corpus_map(rng: random.Random, config: GeneratorConfig = DEFAULT_CONFIG) -> NValuedCircleMap:
    r = rng.random()
    if r < 0.15:
        return linear_map(rng.randint(1, config.max_strands), rng.randint(-8, 8))
    if r < 0.25:
        return random_constant_map(rng, config.max_strands, config.max_denominator)
    return random_pl_map(rng, config.max_strands, config.max_breakpoints, config.max_denominator)


def random_region(rng: random.Random, fmap: NValuedCircleMap, max_den: int = DEFAULT_MAX_DENOMINATOR,
                  attempts: int = 50) -> OpenArcSet:
    """Random admissible region: whole circle, empty, one arc (often across the seam) or a union."""
    kind = rng.random()
    if kind < 0.15:
        return OpenArcSet.whole()
    if kind < 0.2:
        return OpenArcSet.empty()
    for _ in range(attempts):
        if kind < 0.55:
            start = random_rational(rng, Fraction(1, 2), 1, max_den) if rng.random() < 0.5 \
                else random_rational(rng, 0, 1, max_den)
            region = OpenArcSet((Arc(start, random_rational(rng, 0, 1, max_den)),))
        else:
            k = rng.randint(2, 3)
            pts = sorted({random_rational(rng, 0, 1, max_den) for _ in range(2 * k)})
            if len(pts) < 4:
                continue
            off = rng.randrange(2)
            arcs = []
            for j in range(off, len(pts) - 1, 2):
                arcs.append(Arc(pts[j], pts[j + 1] - pts[j]))
            if off == 1 and len(pts) % 2 == 0:
                arcs.append(Arc(pts[-1], pts[0] + 1 - pts[-1]))
            region = OpenArcSet(tuple(arcs))
        if is_admissible(fmap, region):
            return region
    return OpenArcSet.whole()


def random_homotopy(rng: random.Random, fmap: NValuedCircleMap, region: OpenArcSet,
                    max_den: int = DEFAULT_MAX_DENOMINATOR) -> StrandHomotopy | None:
    """A certified admissible straight-line homotopy starting at ``fmap``, if one is found."""
    if not fixed_points(fmap).fix_finite and rng.random() < 0.5:
        _, h = fix_finite_perturb(fmap)
        return h if homotopy_is_admissible(h, region) else None
    for scale in (Fraction(1, 3), Fraction(1, 12), Fraction(1, 48)):
        if rng.random() < 0.3:
            c = random_rational(rng, -scale / fmap.n, scale / fmap.n, max_den * 8)
            target = rotate(fmap, c)
        else:
            bound = scale / (2 * fmap.n)
            starts = [random_rational(rng, -bound, bound, max_den) for _ in range(fmap.n)]
            strands = []
            for i, s in enumerate(fmap.strands):
                inner = [(t, v + random_rational(rng, -bound, bound, max_den)) for t, v in s.breakpoints[1:-1]]
                strands.append(PLFunction(((0, s(0) + starts[i]), *inner,
                                           (1, s(1) + starts[fmap.monodromy[i]]))))
            target = NValuedCircleMap(tuple(strands), fmap.monodromy)
        try:
            h = make_homotopy(fmap, target)
        except DistinctnessBroken:
            continue
        if homotopy_is_admissible(h, region):
            return h
    return None


def generate_corpus(seed: int, count: int, config: GeneratorConfig = DEFAULT_CONFIG) -> AdmissibleCorpus:
    """Deterministic corpus of admissible pairs; identical for identical ``(seed, count, config)``."""
    cases = []
    for cid in range(count):
        rng = case_rng(seed, "corpus", cid)
        fmap = random_corpus_map(rng, config)
        region = random_region(rng, fmap, config.max_denominator)
        hom = random_homotopy(rng, fmap, region, config.max_denominator) if rng.random() < 0.7 else None
        cases.append(Case(cid, fmap, region, hom))
    return AdmissibleCorpus(seed, tuple(cases))


# ---------------------------------------------------------------- fixed set geometry

def _features(fmap: NValuedCircleMap, arc: Arc) -> list:
    """Fixed points and fixed arcs inside ``arc`` as sorted ``(lo, hi)`` lift intervals."""
    fps = fixed_points(fmap)
    out = [(arc.param(p.location), arc.param(p.location)) for p in fps.points if arc.contains(p.location)]
    for fa in fixed_arcs(fps):
        if arc.contains(fa.start):
            lo = arc.param(fa.start)
            out.append((lo, lo + fa.length))
    return sorted(out)


def _region_arcs(fmap: NValuedCircleMap, region: OpenArcSet):
    """Arcs covering the region up to finitely many non-fixed points, or ``None``."""
    if not region.whole_circle:
        return list(region.arcs)
    fps = fixed_points(fmap)
    arcs = fixed_arcs(fps)
    if any(a.length == 1 for a in arcs):
        return None
    feats = sorted([(p.location, p.location) for p in fps.points]
                   + [(a.start, a.start + a.length) for a in arcs])
    if not feats:
        return [Arc(0, 1)]
    best = None
    for k, (lo, hi) in enumerate(feats):
        nlo = feats[(k + 1) % len(feats)][0] + (1 if k + 1 == len(feats) else 0)
        if best is None or nlo - hi > best[0]:
            best = (nlo - hi, (hi + nlo) / 2)
    return [Arc(mod1(best[1]), 1)]


def fix_meets(fmap: NValuedCircleMap, region: OpenArcSet) -> bool:
    """Whether Fix(f) meets the region, from the fixed point solver alone."""
    if region.whole_circle:
        fps = fixed_points(fmap)
        return bool(fps.points or fps.intervals)
    return any(_features(fmap, arc) for arc in region.arcs)


def _gaps(arc: Arc, feats: list) -> list:
    edges = [arc.start, *[x for f in feats for x in f], arc.end]
    return [(edges[2 * k], edges[2 * k + 1]) for k in range(len(feats) + 1)]


def decompose(fmap: NValuedCircleMap, region: OpenArcSet, rng: random.Random):
    """Random disjoint ``U1, U2`` inside ``region`` covering its fixed set, or ``None``."""
    arcs = _region_arcs(fmap, region)
    if arcs is None:
        return None
    u1, u2 = [], []
    for arc in arcs:
        feats = _features(fmap, arc)
        gaps = _gaps(arc, feats)
        cuts = [(a + b) / 2 for a, b in gaps[1:-1] if rng.random() < 0.6]
        bounds = [arc.start, *cuts, arc.end]
        for lo, hi in zip(bounds, bounds[1:]):
            piece = Arc(lo, hi - lo)
            (u1 if rng.random() < 0.5 else u2).append(piece)
    return OpenArcSet(tuple(u1)), OpenArcSet(tuple(u2))


def excision_set(fmap: NValuedCircleMap, region: OpenArcSet):
    """Small admissible ``V`` inside ``region`` containing its fixed set, or ``None``."""
    arcs = _region_arcs(fmap, region)
    if arcs is None:
        return None
    out = []
    for arc in arcs:
        feats = _features(fmap, arc)
        gaps = _gaps(arc, feats)
        for k, (lo, hi) in enumerate(feats):
            left = gaps[k][0] + 2 * (gaps[k][1] - gaps[k][0]) / 3
            right = gaps[k + 1][0] + (gaps[k + 1][1] - gaps[k + 1][0]) / 3
            out.append(Arc(left, right - left))
    return OpenArcSet(tuple(out))


def isolated_point_arcs(fmap: NValuedCircleMap, region: OpenArcSet) -> list:
    """``(arc, x_param)`` for each isolated fixed point: a proper arc isolating it."""
    arcs = _region_arcs(fmap, region)
    if arcs is None:
        return []
    out = []
    for arc in arcs:
        feats = _features(fmap, arc)
        gaps = _gaps(arc, feats)
        for k, (lo, hi) in enumerate(feats):
            if lo != hi:
                continue
            left = (gaps[k][0] + gaps[k][1]) / 2
            right = (gaps[k + 1][0] + gaps[k + 1][1]) / 2
            sub = Arc(left, right - left)
            if sub.length < 1:
                out.append((sub, sub.param(lo)))
    return out


def classical_branch_index(fmap: NValuedCircleMap, arc: Arc, x) -> int:
    """Classical index of the unique selection over ``arc`` fixing ``x``."""
    fixed = [sel.lift for sel in split_on_arc(fmap, arc) if is_integer(sel.lift(x) - x)]
    if len(fixed) != 1:
        raise AssertionError(f"{len(fixed)} selections fix {x} on {arc}")
    return local_index(fixed[0].slope_left(x), fixed[0].slope_right(x))


def random_homeomorphism(rng: random.Random, max_den: int = DEFAULT_MAX_DENOMINATOR) -> CircleHomeomorphism:
    c = random_rational(rng, 0, 1, max_den) if rng.random() < 0.8 else Fraction(0)
    k = rng.randint(0, 3)
    ts = sorted({random_rational(rng, 0, 1, max_den) for _ in range(k)})
    vs = sorted({random_rational(rng, 0, 1, max_den) for _ in range(len(ts))})
    if len(vs) != len(ts):
        ts = ts[:len(vs)]
    pts = [(0, c), *((t, c + v) for t, v in zip(ts, vs)), (1, c + 1)]
    return CircleHomeomorphism(PLFunction(tuple(pts)))


# ---------------------------------------------------------------- suites

def check_homotopy_axiom(iota: CandidateIndexFunction, corpus: AdmissibleCorpus) -> SuiteReport:
    rep = SuiteReport("homotopy", iota.name)
    for case in corpus:
        h = case.homotopy
        if h is None:
            continue
        rep.add(case.case_id, _inputs(h.source, h.target, region=case.region),
                iota(h.source, case.region), iota(h.target, case.region))
    return rep


def check_additivity_axiom(iota: CandidateIndexFunction, corpus: AdmissibleCorpus) -> SuiteReport:
    """Additivity plus its consequences: empty set, excision and the solution property."""
    rep = SuiteReport("additivity", iota.name)
    for case in corpus:
        f, U = case.map, case.region
        rng = case_rng(corpus.seed, "additivity", case.case_id)
        rep.add(f"{case.case_id}/empty", _inputs(f, region=OpenArcSet.empty()), 0, iota(f, OpenArcSet.empty()))
        total = iota(f, U)
        parts = decompose(f, U, rng)
        if parts is not None:
            u1, u2 = parts
            rep.add(f"{case.case_id}/split", _inputs(f, region=U, u1=format_region(u1), u2=format_region(u2)),
                    total, iota(f, u1) + iota(f, u2))
        V = excision_set(f, U)
        if V is not None:
            rep.add(f"{case.case_id}/excision", _inputs(f, region=U, v=format_region(V)), total, iota(f, V))
        if total != 0:
            rep.add(f"{case.case_id}/solution", _inputs(f, region=U), True, fix_meets(f, U))
    return rep


def check_splitting_axiom(iota: CandidateIndexFunction, corpus: AdmissibleCorpus,
                          per_case: int = 3) -> SuiteReport:
    """On isolating arcs around single fixed points, compare with the classical index."""
    rep = SuiteReport("splitting", iota.name)
    for case in corpus:
        f = case.map
        for arc, x in isolated_point_arcs(f, case.region)[:per_case]:
            region = OpenArcSet((arc,))
            rep.add(f"{case.case_id}/{arc}", _inputs(f, region=region),
                    classical_branch_index(f, arc, x), iota(f, region))
    return rep


def check_normalization_axiom(iota: CandidateIndexFunction, corpus: AdmissibleCorpus) -> SuiteReport:
    """Constant maps on arcs containing exactly one of their values have index 1."""
    rep = SuiteReport("normalization", iota.name)
    for case in corpus:
        rng = case_rng(corpus.seed, "normalization", case.case_id)
        c = random_constant_map(rng)
        vals = sorted(s(0) for s in c.strands)
        k = rng.randrange(len(vals))
        v = vals[k]
        if len(vals) == 1:
            prev, nxt = v - Fraction(1, 2), v + Fraction(1, 2)
        else:
            prev = vals[k - 1] - (1 if k == 0 else 0)
            nxt = vals[k + 1] if k + 1 < len(vals) else vals[0] + 1
        lo = random_rational(rng, prev, v, 4096)
        hi = random_rational(rng, v, nxt, 4096)
        region = OpenArcSet((Arc(lo, hi - lo),))
        rep.add(case.case_id, _inputs(c, region=region), 1, iota(c, region))
    return rep


def check_chart_invariance(iota: CandidateIndexFunction, corpus: AdmissibleCorpus) -> SuiteReport:
    rep = SuiteReport("chart", iota.name)
    for case in corpus:
        rng = case_rng(corpus.seed, "chart", case.case_id)
        phi = random_homeomorphism(rng)
        g = conjugate(case.map, phi)
        rep.add(case.case_id, _inputs(case.map, g, region=case.region),
                iota(case.map, case.region), iota(g, phi.image(case.region)))
    return rep


AXIOM_SUITES = {
    "homotopy": check_homotopy_axiom,
    "additivity": check_additivity_axiom,
    "splitting": check_splitting_axiom,
    "normalization": check_normalization_axiom,
    "chart": check_chart_invariance,
}


def run_axiom_suites(iota: CandidateIndexFunction, corpus: AdmissibleCorpus) -> dict:
    return {name: suite(iota, corpus) for name, suite in AXIOM_SUITES.items()}


def differential_uniqueness(iota1: CandidateIndexFunction, iota2: CandidateIndexFunction,
                            corpus: AdmissibleCorpus) -> SuiteReport:
    """Both candidates on every corpus pair; failures are divergence witnesses."""
    rep = SuiteReport("uniqueness", f"{iota1.name} vs {iota2.name}")
    for case in corpus:
        rep.add(case.case_id, _inputs(case.map, region=case.region),
                iota1(case.map, case.region), iota2(case.map, case.region))
    return rep


def first_divergence(report: SuiteReport):
    fails = report.failures
    return fails[0] if fails else None


# ---------------------------------------------------------------- averaging and product benches

def negative_control_report(controls, corpus: AdmissibleCorpus) -> SuiteReport:
    """Each control must be rejected by at least one axiom suite."""
    rep = SuiteReport("negative_control", ",".join(c.name for c in controls))
    for ctrl in controls:
        failed = sorted(name for name, r in run_axiom_suites(ctrl, corpus).items() if not r.passed)
        rep.add(ctrl.name, {"candidate": ctrl.name}, "rejected", failed, passed=bool(failed))
    return rep


def averaging_grid(ns=(1, 2, 3), ds=range(-4, 5), ks=(2, 3, 4)):
    for n in ns:
        for d in ds:
            for k in ks:
                yield n, d, k


def run_averaging_suite(seed: int) -> SuiteReport:
    """Averaging identity and its Lefschetz corollary on the linear grid."""
    from .covering import (CyclicCover, commutes, deck_orbits, lift_map, verify_averaging,
                           verify_lefschetz_averaging)

    rep = SuiteReport("averaging", "index")
    for n, d, k in averaging_grid():
        base = linear_map(n, d)
        cover = CyclicCover(k)
        lifts = lift_map(base, cover)
        cid = f"linear({n},{d})/k={k}"
        if not lifts:
            continue
        rng = case_rng(seed, "averaging", n * 1000 + d * 10 + k)
        orbit_sizes = sorted(len(o) for o in deck_orbits(lifts))
        rep.add(f"{cid}/deck-closure", _inputs(base, k=k), True,
                all(k % s == 0 for s in orbit_sizes) and len(lifts) <= k ** n)
        probes = [random_rational(rng, 0, 1) for _ in range(5)]
        rep.add(f"{cid}/commutes", _inputs(base, k=k), True,
                all(commutes(lift, u) for lift in lifts for u in probes))
        for region in (OpenArcSet.whole(), random_region(rng, base)):
            r = verify_averaging(base, cover, region, lifts)
            rep.add(f"{cid}/{format_region(region)}", _inputs(base, region=region, k=k,
                                                           per_translate=list(r.per_translate)),
                    r.base_index, r.deck_sum // k if r.divisible else f"{r.deck_sum}/{k}")
        lr = verify_lefschetz_averaging(base, cover, lifts)
        rep.add(f"{cid}/lefschetz", _inputs(base, k=k), lr.base,
                sum(lr.per_translate) // k if sum(lr.per_translate) % k == 0 else None)
    return rep


def random_product_case(seed: int, cid: int, config: GeneratorConfig = DEFAULT_CONFIG):
    rng = case_rng(seed, "product", cid)
    f = random_corpus_map(rng, config)
    g = random_corpus_map(rng, config)
    return f, g, random_region(rng, f, config.max_denominator), random_region(rng, g, config.max_denominator)


def _free_arc(fmap: NValuedCircleMap, region: OpenArcSet):
    """A fixed-point-free arc in the middle of the widest gap of the region."""
    arcs = _region_arcs(fmap, region)
    if not arcs:
        return None
    best = None
    for arc in arcs:
        for a, b in _gaps(arc, _features(fmap, arc)):
            if b > a and (best is None or b - a > best[1] - best[0]):
                best = (a, b)
    if best is None:
        return None
    a, b = best
    return OpenArcSet((Arc(a + (b - a) / 3, (b - a) / 3),))


def cross_term_regions(f, g, U, V):
    """``(U1, U2, V1, V2)`` with every fixed point of f x g in ``U1 x V1``, or ``None``."""
    u1, v1 = excision_set(f, U), excision_set(g, V)
    u2, v2 = _free_arc(f, U), _free_arc(g, V)
    if None in (u1, v1, u2, v2):
        return None
    return u1, u2, v1, v2


def run_product_suite(seed: int, cases: int, config: GeneratorConfig = DEFAULT_CONFIG) -> SuiteReport:
    from .product import (ProductRegion, TorusProductMap, global_selections, product_is_split,
                          torus_index_direct, verify_lefschetz_product, verify_product_formula)

    rep = SuiteReport("product", "index")
    named = [((2, 1), (1, 2), -1), ((2, 6), (1, 2), 4)]
    for a, b, want in named:
        f, g = linear_map(*a), linear_map(*b)
        r = verify_product_formula(TorusProductMap(f, g))
        rep.add(f"named/linear{a}xlinear{b}".replace(" ", ""), _inputs(f, g), want, r.direct,
                passed=r.passed and r.direct == want)
    for cid in range(cases):
        f, g, U, V = random_product_case(seed, cid, config)
        pm = TorusProductMap(f, g)
        region = ProductRegion(U, V)
        r = verify_product_formula(pm, region)
        ins = _inputs(f, g, region=U, v=format_region(V))
        rep.add(f"{cid}/formula", ins, r.index_f * r.index_g, r.direct, passed=r.passed)
        lp = verify_lefschetz_product(f, g)
        rep.add(f"{cid}/lefschetz", _inputs(f, g), lp.lefschetz_f * lp.lefschetz_g, lp.direct)
        f2, _ = fix_finite_perturb(f)
        g2, _ = fix_finite_perturb(g)
        pm2 = TorusProductMap(f2, g2)
        swapped = torus_index_direct(TorusProductMap(g2, f2))
        rep.add(f"{cid}/swap", _inputs(f, g), torus_index_direct(pm2), swapped)
        if f.n * g.n <= 4:
            rep.add(f"{cid}/split-search", _inputs(f, g), product_is_split(pm),
                    len(global_selections(pm)) == f.n * g.n)
        regs = cross_term_regions(f, g, U, V)
        if regs is not None:
            u1, u2, v1, v2 = regs
            cross = (torus_index_direct(pm2, ProductRegion(u1, v2)),
                     torus_index_direct(pm2, ProductRegion(u2, v1)))
            rep.add(f"{cid}/cross-terms", _inputs(f, g, region=u1, u2=format_region(u2),
                                                  v1=format_region(v1), v2=format_region(v2)),
                    [0, 0], list(cross))
    return rep


def random_proper_arc(rng: random.Random, max_den: int = DEFAULT_MAX_DENOMINATOR) -> Arc:
    """A proper arc; about half of them cross the seam."""
    length = random_rational(rng, 0, 1, max_den)
    if rng.random() < 0.5:
        start = random_rational(rng, 1 - length, 1, max_den)
    else:
        start = random_rational(rng, 0, 1, max_den)
    return Arc(start, length)


def selections_cover(fmap: NValuedCircleMap, arc: Arc, sels: list, probes: list) -> bool:
    """At every probe offset the selections give n distinct values equal to f there."""
    for s in probes:
        x = arc.start + s
        vals = [mod1(sel.lift(x)) for sel in sels]
        if len(set(vals)) != fmap.n or frozenset(vals) != evaluate(fmap, mod1(x)):
            return False
    return True


def brute_force_split(fmap: NValuedCircleMap) -> bool:
    """Follow every strand once around the circle by value matching."""
    return all(transport(fmap, i) == i for i in range(fmap.n))


def run_splitting_infrastructure(seed: int, cases: int,
                                 config: GeneratorConfig = DEFAULT_CONFIG) -> SuiteReport:
    rep = SuiteReport("split_infra", "split_on_arc")
    for cid in range(cases):
        rng = case_rng(seed, "split", cid)
        f = random_corpus_map(rng, config)
        arc = random_proper_arc(rng, config.max_denominator)
        probes = [Fraction(0), *(random_rational(rng, 0, arc.length, config.max_denominator)
                                 for _ in range(4))]
        region = OpenArcSet((arc,))
        sels = split_on_arc(f, arc)
        rep.add(f"{cid}/arc", _inputs(f, region=region, seam=arc.crosses_seam()),
                True, len(sels) == f.n and selections_cover(f, arc, sels, probes))
        if f.n <= 4:
            rep.add(f"{cid}/is_split", _inputs(f), brute_force_split(f), is_split(f))
    return rep
