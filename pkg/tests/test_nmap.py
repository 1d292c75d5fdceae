from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import seeded_map, seeded_pl_map
from nvfix.errors import InvalidMap, NotSplit
from nvfix.nmap import (
    CircleHomeomorphism,
    NValuedCircleMap,
    PLFunction,
    conjugate,
    constant_map,
    continue_strand,
    evaluate,
    is_split,
    linear_map,
    relabel,
    rotate,
    shift_strands,
    split,
    split_on_arc,
    total_degree,
    transport,
    validate,
)
from nvfix.regions import Arc, OpenArcSet, mod1

half, third, quarter = Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)


# ---------------------------------------------------------------- PLFunction

def test_pl_function_evaluates_exactly():
    f = PLFunction(((0, 0), (half, 1), (1, 0)))
    assert f(quarter) == half
    assert f(Fraction(3, 4)) == half
    assert f.slope_right(0) == 2 and f.slope_left(1) == -2
    assert f.slope_left(half) == 2 and f.slope_right(half) == -2


def test_pl_function_rejects_floats_and_bad_breakpoints():
    with pytest.raises(TypeError):
        PLFunction(((0, 0.5), (1, 1)))
    with pytest.raises(InvalidMap):
        PLFunction(((0, 0), (0, 1)))
    with pytest.raises(InvalidMap):
        PLFunction(((0, 0),))


def test_solve_and_simplify():
    f = PLFunction(((0, 0), (half, half), (1, 1)))
    assert f.simplified().breakpoints == ((0, 0), (1, 1))
    g = PLFunction(((0, 0), (half, 1), (1, 0)))
    assert g.solve(half) == [quarter, Fraction(3, 4)]
    assert g.solve(2) == []


def test_then_and_restrict():
    f = PLFunction(((0, 0), (1, 2)))
    g = PLFunction(((1, 2), (2, 2)))
    h = f.then(g)
    assert h(Fraction(3, 2)) == 2 and h(half) == 1
    assert h.restrict(half, Fraction(3, 2)).breakpoints == ((half, 1), (1, 2), (Fraction(3, 2), 2))
    with pytest.raises(ValueError):
        f.then(PLFunction(((1, 3), (2, 3))))


# ---------------------------------------------------------------- maps

def test_linear_map_structure():
    f = linear_map(3, 1)
    assert f.n == 3 and f.monodromy == (1, 2, 0)
    assert evaluate(f, 0) == frozenset({0, third, 2 * third})
    assert total_degree(f) == 1
    assert validate(f).ok


@pytest.mark.parametrize("n,d,split_expected", [(1, 5, True), (2, 1, False), (2, 6, True), (3, 3, True),
                                                (3, 4, False), (4, -8, True)])
def test_is_split_is_d_mod_n(n, d, split_expected):
    assert is_split(linear_map(n, d)) is split_expected


def test_split_of_split_map_gives_single_valued_maps():
    parts = split(linear_map(2, 6))
    assert [p.n for p in parts] == [1, 1]
    assert sorted(total_degree(p) for p in parts) == [3, 3]
    with pytest.raises(NotSplit):
        split(linear_map(2, 1))


def test_validate_reports_collision():
    f = NValuedCircleMap((PLFunction(((0, 0), (1, 1))), PLFunction(((0, half), (1, 0)))))
    report = validate(f)
    assert not report.ok
    assert any(v.kind == "Distinctness" for v in report.violations)


def test_validate_reports_broken_closure():
    f = NValuedCircleMap((PLFunction(((0, 0), (1, quarter))),))
    report = validate(f)
    assert [v.kind for v in report.violations] == ["Closure"]


def test_bad_monodromy_and_domain():
    with pytest.raises(InvalidMap):
        NValuedCircleMap((PLFunction(((0, 0), (1, 1))),), (1,))
    with pytest.raises(InvalidMap):
        NValuedCircleMap((PLFunction(((0, 0), (half, 1))),))


def test_evaluate_domain():
    f = linear_map(1, 2)
    with pytest.raises(ValueError):
        evaluate(f, 1)
    with pytest.raises(ValueError):
        evaluate(f, -quarter)


def test_constant_map():
    c = constant_map([quarter, Fraction(3, 4)])
    assert evaluate(c, third) == frozenset({quarter, Fraction(3, 4)})
    with pytest.raises(InvalidMap):
        constant_map([quarter, Fraction(5, 4)])


def test_continue_strand_crosses_seam_through_monodromy():
    f = linear_map(2, 1)
    path = continue_strand(f, 0, half, Fraction(3, 2))
    # strand 0 is t/2 on [1/2, 1], then strand 1 = (t + 1)/2 shifted by the closure offset 0
    assert path(half) == quarter
    assert path(1) == half
    assert path(Fraction(3, 2)) == Fraction(3, 4)


def test_split_on_seam_crossing_arc():
    f = linear_map(2, 1)
    sels = split_on_arc(f, Arc(Fraction(3, 4), half))
    assert [s.strands for s in sels] == [(0, 1), (1, 0)]
    for s in sels:
        assert mod1(s.lift(Fraction(5, 4))) in evaluate(f, quarter)


def test_split_on_arc_rejects_whole_circle():
    with pytest.raises(ValueError):
        split_on_arc(linear_map(1, 2), OpenArcSet.whole())


def test_transport_ignores_stored_monodromy():
    f = linear_map(3, 2)
    assert [transport(f, i) for i in range(3)] == list(f.monodromy)


def test_circle_homeomorphism_round_trip():
    phi = CircleHomeomorphism(PLFunction(((0, quarter), (half, Fraction(1, 2) + Fraction(1, 8)),
                                          (1, Fraction(5, 4)))))
    for x in (0, Fraction(1, 7), half, Fraction(9, 10), Fraction(13, 10)):
        assert phi.inverse(phi(x)) == x
    with pytest.raises(InvalidMap):
        CircleHomeomorphism(PLFunction(((0, 0), (1, 2))))


# ---------------------------------------------------------------- properties

@given(st.integers(0, 10**6))
def test_random_maps_are_valid(seed):
    assert validate(seeded_map(seed)).ok


@given(st.integers(0, 10**6), st.fractions(0, 1, max_denominator=50).filter(lambda x: x < 1))
def test_relabel_preserves_behaviour(seed, t):
    f = seeded_pl_map(seed)
    perm = list(reversed(range(f.n)))
    g = relabel(f, perm)
    assert validate(g).ok
    assert evaluate(g, t) == evaluate(f, t)
    assert is_split(g) == is_split(f) and total_degree(g) == total_degree(f)


@given(st.integers(0, 10**6), st.fractions(0, 1, max_denominator=50).filter(lambda x: x < 1))
def test_rotation_and_integer_shifts(seed, t):
    f = seeded_map(seed)
    c = Fraction(2, 7)
    assert evaluate(rotate(f, c), t) == frozenset(mod1(v + c) for v in evaluate(f, t))
    g = shift_strands(f, [k - 1 for k in range(f.n)])
    assert evaluate(g, t) == evaluate(f, t)
    assert total_degree(g) == total_degree(f)


@given(st.integers(0, 10**6), st.fractions(0, 1, max_denominator=40).filter(lambda x: x < 1))
def test_conjugation_commutes_with_evaluation(seed, x):
    f = seeded_map(seed)
    phi = CircleHomeomorphism(PLFunction(((0, Fraction(1, 5)), (Fraction(2, 5), Fraction(1, 3) + Fraction(1, 5)),
                                          (1, Fraction(6, 5)))))
    g = conjugate(f, phi)
    assert validate(g).ok
    y = mod1(phi(x))
    assert evaluate(g, y) == frozenset(mod1(phi(v)) for v in evaluate(f, x))
