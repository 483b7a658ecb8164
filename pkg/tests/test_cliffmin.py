from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import cliffcert.cliffmin as cm
from cliffcert.cliffmin import (
    CliffordSearchResult,
    ConstraintRegion,
    Interval,
    cliff_of_class,
    closed_form_cliff,
    constraints_satisfied,
    f_objective,
    hyperplane_cliff,
    minimize_cliff,
    minimize_cliff_rank1,
    scan_negative_s,
    t_bounds,
)
from cliffcert.errors import CeilingExceeded, ParameterError
from cliffcert.lattice import DivisorClass, FarkasOrtega, Generic, build_lattice
from oracles import brute_cliff_rank1, brute_cliff_rank2

R392 = ConstraintRegion(3, 9, 2)


@pytest.mark.parametrize("st_, expected", [((0, 1), 20), ((0, 0), -2)])
def test_f_objective_examples(st_, expected):
    assert f_objective(R392, *st_) == expected


@pytest.mark.parametrize("t", [-5, 0, 1, 7])
def test_f_objective_constant_at_half_n(t):
    # a n^2 - 2 with a = 9, n = 2
    assert f_objective(R392, 1, t) == 34


@pytest.mark.parametrize(
    "st_, expected",
    [((0, 1), (True, True, True)), ((0, 0), (True, False, True)), ((3, 0), (True, True, False))],
)
def test_constraints_examples(st_, expected):
    assert constraints_satisfied(R392, *st_) == expected


def test_t_bounds_examples():
    assert t_bounds(R392, 1) == Interval(Fraction(-18, 11), Fraction(0))
    assert t_bounds(R392, 0) == Interval(Fraction(2, 11), Fraction(36, 11), lo_open=True)
    b = t_bounds(R392, 2)
    assert b.lo == b.hi == Fraction(-36, 11)
    assert not b.is_empty() and len(b.integers()) == 0


def test_interval_integers():
    assert list(Interval(Fraction(1), Fraction(3), lo_open=True).integers()) == [2, 3]
    assert list(Interval(Fraction(1), Fraction(3), hi_open=True).integers()) == [1, 2]
    assert list(Interval(Fraction(-5, 2), Fraction(1, 2)).integers()) == [-2, -1, 0]
    assert Interval(Fraction(1), Fraction(1), lo_open=True).is_empty()


@pytest.mark.parametrize("p, a, n", [(3, 9, 2), (3, 9, 1), (3, 11, 2), (3, 9, 3), (4, 20, 3), (5, 13, 4)])
def test_minimize_matches_brute_force(p, a, n):
    reported, lattice_min, argmin, count = brute_cliff_rank2(p, a, n)
    res = minimize_cliff(ConstraintRegion(p, a, n))
    assert res.reported_cliff == reported
    assert res.lattice_min == lattice_min
    assert res.argmin == argmin
    assert res.feasible_count == count


def test_minimize_examples():
    res = minimize_cliff(R392)
    assert (res.reported_cliff, res.source) == (20, "lattice")
    assert (0, 1) in res.argmin
    res = minimize_cliff(ConstraintRegion(3, 9, 1))
    assert (res.reported_cliff, res.source, res.generic_cap) == (9, "generic", 9)
    assert minimize_cliff(ConstraintRegion(3, 11, 2)).reported_cliff == 28


def test_minimize_argmin_and_feasible_consistency():
    region = ConstraintRegion(4, 15, 5)
    res = minimize_cliff(region)
    pts = [
        (s, t)
        for s in range(-8, 8)
        for t in range(-200, 200)
        if all(constraints_satisfied(region, s, t))
    ]
    assert len(pts) == res.feasible_count
    vals = {pt: f_objective(region, *pt) for pt in pts}
    assert min(vals.values()) == res.lattice_min
    assert res.argmin == sorted(pt for pt, v in vals.items() if v == res.lattice_min)


def test_minimize_ceiling(monkeypatch):
    monkeypatch.setattr(cm, "MAX_LATTICE_POINTS", 3)
    with pytest.raises(CeilingExceeded):
        minimize_cliff(ConstraintRegion(3, 9, 4))


def test_region_validation():
    with pytest.raises(ParameterError):
        ConstraintRegion(3, 9, 0)
    with pytest.raises(ParameterError):
        ConstraintRegion(3, 8, 2)


def test_closed_form_examples():
    assert closed_form_cliff(FarkasOrtega(3, 9), 2) == 20
    assert closed_form_cliff(Generic(9), 2) == 14
    assert closed_form_cliff(FarkasOrtega(3, 9), 3) == 31
    assert closed_form_cliff(FarkasOrtega(3, 9), 3) == minimize_cliff(ConstraintRegion(3, 9, 3)).reported_cliff


def test_closed_form_rejects_n1():
    with pytest.raises(ParameterError):
        closed_form_cliff(FarkasOrtega(3, 9), 1)
    assert hyperplane_cliff(FarkasOrtega(3, 9)) == 9


def test_cliff_of_class_examples():
    fam = FarkasOrtega(3, 9)
    L = build_lattice(fam)
    assert cliff_of_class(L, fam.E, 2 * fam.C) == 20
    assert cliff_of_class(L, fam.C, 2 * fam.C) == 34
    L9 = build_lattice(Generic(9))
    assert cliff_of_class(L9, DivisorClass((1,)), DivisorClass((2,))) == 14


@given(
    st.integers(3, 10), st.integers(0, 40), st.integers(1, 8),
    st.integers(-10, 10), st.integers(-10, 10),
)
def test_objective_equals_class_cliff(p, da, n, s, t):
    fam = FarkasOrtega(p, 2 * p + 3 + da)
    L = build_lattice(fam)
    region = ConstraintRegion.of(fam, n)
    F = s * fam.C + t * fam.E
    assert f_objective(region, s, t) == cliff_of_class(L, F, n * fam.C)


@given(st.integers(3, 10), st.integers(0, 40), st.integers(1, 8), st.integers(-30, -1))
def test_negative_s_interval_empty(p, da, n, s):
    region = ConstraintRegion(p, 2 * p + 3 + da, n)
    assert t_bounds(region, s).is_empty()


def test_negative_s_scan_small():
    assert scan_negative_s(ConstraintRegion(3, 9, 2)) == []


@pytest.mark.parametrize("g, n", [(9, 2), (2, 2), (2, 3), (5, 1), (9, 3), (30, 6)])
def test_rank1_matches_brute_force(g, n):
    res = minimize_cliff_rank1(g, n)
    assert res.reported_cliff == brute_cliff_rank1(g, n)
    if n >= 2:
        assert res.reported_cliff == closed_form_cliff(Generic(g), n)
        assert (1,) in res.argmin


def test_search_result_json_round_trip():
    res = minimize_cliff(ConstraintRegion(3, 9, 4))
    assert CliffordSearchResult.from_json(res.to_json()) == res
