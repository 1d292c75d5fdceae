from __future__ import annotations

from fractions import Fraction

import pytest

from nvfix.covering import (
    CyclicCover,
    commutes,
    deck_act,
    deck_orbits,
    lift_map,
    verify_averaging,
    verify_lefschetz_averaging,
)
from nvfix.errors import NoLiftExists, NotAdmissible
from nvfix.index import index_schirmer
from nvfix.nmap import constant_map, evaluate, linear_map, validate
from nvfix.regions import Arc, OpenArcSet

WHOLE = OpenArcSet.whole()


def test_cover_projection_and_preimage():
    c = CyclicCover(3)
    assert c.project(Fraction(1, 2)) == Fraction(1, 2)
    assert c.project(Fraction(2, 3)) == 0
    pre = c.preimage(OpenArcSet((Arc(Fraction(9, 10), Fraction(1, 5)),)))
    assert len(pre.arcs) == 3
    assert all(a.length == Fraction(1, 15) for a in pre.arcs)
    with pytest.raises(ValueError):
        CyclicCover(0)


def test_single_valued_lifts():
    f = linear_map(1, 2)
    lifts = lift_map(f, CyclicCover(3))
    assert len(lifts) == 3
    starts = sorted(l.map.strands[0](0) for l in lifts)
    assert starts == [0, Fraction(1, 3), Fraction(2, 3)]
    for l in lifts:
        assert l.map.strands[0](1) - l.map.strands[0](0) == 2
        assert validate(l.map).ok


def test_lifts_commute_with_projection():
    f = linear_map(2, 6)
    lifts = lift_map(f, CyclicCover(2))
    assert lifts
    for l in lifts:
        for u in (0, Fraction(1, 7), Fraction(1, 2), Fraction(5, 6)):
            assert commutes(l, u)


def test_deck_action_is_a_group_action():
    f = linear_map(1, 2)
    cover = CyclicCover(3)
    lift = lift_map(f, cover)[0]
    assert deck_act(3, lift).key() == lift.key()
    assert deck_act(1, deck_act(2, lift)).key() == deck_act(0, lift).key()
    assert len(deck_orbits(lift_map(f, cover))) == 1


def test_no_lift_case():
    f = linear_map(2, 1)
    assert lift_map(f, CyclicCover(2)) == []
    with pytest.raises(NoLiftExists):
        verify_averaging(f, CyclicCover(2), WHOLE)


def test_enumeration_limit():
    with pytest.raises(ValueError):
        lift_map(linear_map(4, 0), CyclicCover(4), max_enum=100)


def test_named_averaging_case():
    r = verify_averaging(linear_map(1, 2), CyclicCover(3), WHOLE)
    assert r.per_translate == (-1, -1, -1)
    assert r.deck_sum == -3 and r.base_index == -1 and r.passed


def test_constant_map_averaging():
    r = verify_averaging(constant_map([0, Fraction(1, 2)]), CyclicCover(2), WHOLE)
    assert r.per_translate == (2, 2) and r.passed


def test_averaging_on_an_arc():
    f = linear_map(1, 3)  # fixed points 0, 1/2
    U = OpenArcSet((Arc(Fraction(1, 4), Fraction(1, 2)),))
    r = verify_averaging(f, CyclicCover(2), U)
    assert r.base_index == index_schirmer(f, U) == -1
    assert r.passed


def test_averaging_requires_admissible_region():
    with pytest.raises(NotAdmissible):
        verify_averaging(linear_map(1, 2), CyclicCover(2), OpenArcSet((Arc(0, Fraction(1, 2)),)))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", range(-4, 5))
@pytest.mark.parametrize("k", [2, 3, 4])
def test_averaging_grid(n, d, k):
    base = linear_map(n, d)
    cover = CyclicCover(k)
    lifts = lift_map(base, cover)
    if not lifts:
        pytest.skip("no lift")
    assert verify_averaging(base, cover, WHOLE, lifts).passed
    assert verify_lefschetz_averaging(base, cover, lifts).passed
    for l in lifts:
        assert evaluate(base, 0) == frozenset(cover.project(y) for y in evaluate(l.map, 0))
