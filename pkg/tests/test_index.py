from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import seeded_map, seeded_pair
from nvfix.errors import NotAdmissible
from nvfix.homotopy import homotopy_is_admissible
from nvfix.index import (
    empty_region_index,
    fix_finite_perturb,
    fixed_arcs,
    fixed_points,
    index,
    index_crossing,
    index_schirmer,
    is_admissible,
    is_fixed,
    isolating_arcs,
    local_index,
    perturbation_height,
)
from nvfix.nmap import NValuedCircleMap, PLFunction, constant_map, linear_map, validate
from nvfix.regions import Arc, OpenArcSet

WHOLE = OpenArcSet.whole()
ALGOS = (index_schirmer, index_crossing)


def linear_fixed_points(n: int, d: int) -> list:
    """Closed form: strand k hits the diagonal where (d - n) t = n m - k."""
    if d == n:
        raise ValueError("degenerate")
    out = set()
    for k in range(n):
        for m in range(-abs(d) - n - 2, abs(d) + n + 3):
            t = Fraction(n * m - k, d - n)
            if 0 <= t < 1:
                out.add(t)
    return sorted(out)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("d", range(-8, 9))
def test_linear_family_fixed_points_match_closed_form(n, d):
    f = linear_map(n, d)
    if d == n:
        fps = fixed_points(f)
        assert fps.points == () or not fps.points
        assert len(fps.intervals) >= 1
        return
    expected = linear_fixed_points(n, d)
    assert len(expected) == abs(n - d)
    assert sorted(p.location for p in fixed_points(f).points) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("d", range(-8, 9))
@pytest.mark.parametrize("algo", ALGOS)
def test_linear_family_index(n, d, algo):
    assert algo(linear_map(n, d), WHOLE) == n - d


@pytest.mark.parametrize("n,d,want", [(1, 2, -1), (2, 1, 1), (2, 6, -4), (3, 1, 2), (1, 1, 0)])
def test_named_indices(n, d, want):
    for algo in ALGOS:
        assert algo(linear_map(n, d), WHOLE) == want
    assert index(linear_map(n, d)) == want
    assert index(linear_map(n, d), algorithm="crossing") == want


def test_constant_map_on_small_arc():
    c = constant_map([Fraction(1, 4), Fraction(3, 4)])
    U = OpenArcSet((Arc(Fraction(1, 5), Fraction(1, 10)),))
    assert index_schirmer(c, U) == index_crossing(c, U) == 1
    assert index_schirmer(c, WHOLE) == 2


def test_inadmissible_region_is_rejected():
    f = linear_map(1, 2)
    U = OpenArcSet((Arc(0, Fraction(1, 2)),))
    assert not is_admissible(f, U)
    for algo in ALGOS:
        with pytest.raises(NotAdmissible):
            algo(f, U)


def test_empty_region():
    f = linear_map(2, 6)
    assert empty_region_index(f) == 0
    for algo in ALGOS:
        assert algo(f, OpenArcSet.empty()) == 0


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        index(linear_map(1, 2), algorithm="magic")


def test_local_index_at_kinks():
    assert local_index(2, 2) == -1
    assert local_index(0, 0) == 1
    assert local_index(0, 2) == 0 and local_index(2, 0) == 0
    with pytest.raises(ValueError):
        local_index(1, 0)


def test_kinked_tangency_contributes_zero():
    # strand touches the diagonal from above at t = 1/2 without crossing
    s = PLFunction(((0, Fraction(1, 4)), (Fraction(1, 2), Fraction(1, 2)), (1, Fraction(5, 4))))
    f = NValuedCircleMap((s,))
    assert validate(f).ok
    pts = fixed_points(f).points
    assert [p.location for p in pts] == [Fraction(1, 2)]
    assert pts[0].degenerate and pts[0].local_index == 0
    for algo in ALGOS:
        assert algo(f, WHOLE) == 0


def test_identity_has_a_fixed_circle_and_perturbs_to_two_points():
    f = linear_map(1, 1)
    assert fixed_arcs(f)[0].length == 1
    g, h = fix_finite_perturb(f)
    fps = fixed_points(g)
    assert fps.fix_finite and sorted(p.local_index for p in fps.points) == [-1, 1]
    assert h.source == f and h.target == g
    assert perturbation_height(f) > 0


def test_is_fixed():
    f = linear_map(1, 2)
    assert is_fixed(f, 0)
    assert not is_fixed(f, Fraction(1, 3))


def test_isolating_arcs_are_disjoint_and_contain_points():
    locs = [Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)]
    arcs = isolating_arcs(locs, WHOLE)
    assert len(arcs) == 3
    for (arc, x), loc in zip(arcs, locs):
        assert arc.contains(loc)
        others = [p for p in locs if p != loc]
        assert not any(arc.contains(p) for p in others)


# ---------------------------------------------------------------- properties

@given(st.integers(0, 10**6))
def test_algorithms_agree_on_random_pairs(seed):
    f, U = seeded_pair(seed)
    assert index_schirmer(f, U) == index_crossing(f, U)


@given(st.integers(0, 10**6))
def test_whole_circle_index_is_n_minus_degree(seed):
    from nvfix.nmap import total_degree
    f = seeded_map(seed)
    assert index_crossing(f, WHOLE) == f.n - total_degree(f)


@given(st.integers(0, 10**6))
def test_fix_finite_index_is_sum_of_local_indices(seed):
    """Oracle: for a fix-finite map, sum local indices of fixed points inside U."""
    f, U = seeded_pair(seed)
    g, h = fix_finite_perturb(f)
    fps = fixed_points(g)
    assert fps.fix_finite
    assert homotopy_is_admissible(h, U)
    direct = sum(p.local_index for p in fps.points if U.contains(p.location))
    assert index_crossing(g, U) == direct == index_schirmer(f, U)


@given(st.integers(0, 10**6))
def test_perturbation_keeps_nondegenerate_points(seed):
    f = seeded_map(seed)
    g, _ = fix_finite_perturb(f)
    if fixed_points(f).fix_finite:
        assert g == f
    assert validate(g).ok
