from fractions import Fraction
from math import factorial

import pytest

from toricqm import geometries
from toricqm.chow import build_ring
from toricqm.errors import InvalidInput, NotSemipositive
from toricqm.givental import s_function
from toricqm.lefschetz import (comb_vanishing_report, fty_I, lefschetz_numerator, lefschetz_series, p0_series,
                               relative_I, relative_ladder, relative_point_invariant, telescoping_check,
                               wallcross_check, wallcross_sides)
from toricqm.series import ZElement
from toricqm.toric import enumerate_effective


def _coefficients(name, cap):
    geom = geometries.builtin(name)
    p0 = p0_series(geom, cap)
    return [p0[geom.class_from_degree(d)] for d in range(cap + 1)]


def test_quintic_correction():
    assert _coefficients("quintic", 3) == [1, 120, 113400, 168168000]


def test_quartic_k3_correction():
    assert _coefficients("p3-quartic", 2) == [1, 24, 2520]


@pytest.mark.parametrize("name", ["p2-line", "p3-quadric", "p3-cubic", "p4-cubic"])
def test_fano_hypersurfaces_have_no_correction(name):
    assert _coefficients(name, 4) == [1, 0, 0, 0, 0]


def test_k3_in_p1xp2_correction_by_class():
    geom = geometries.builtin("p1xp2-k3")
    p0 = p0_series(geom, 2)
    for beta in p0.keys_sorted():
        den = 1
        for p in beta.pairings:
            den *= factorial(p)
        assert p0[beta] == Fraction(factorial(geom.y_dot(beta)), den)


def test_non_semipositive_rejected():
    with pytest.raises(NotSemipositive):
        p0_series(geometries.builtin("p1xp1-diagonal"), 2)


def test_degree_zero_term_is_y():
    geom = geometries.builtin("quintic")
    ring = build_ring(geom)
    series = lefschetz_series(geom, 2)
    assert series[geom.zero_class()] == ZElement.const(ring.divisor(geom.Y))


def test_fano_series_is_the_numerator():
    geom = geometries.builtin("p2-line")
    assert lefschetz_series(geom, 3) == lefschetz_numerator(geom, 3)


@pytest.mark.parametrize("name", ["quintic", "p3-quartic", "p1xp2-k3", "p2xp2-cy"])
def test_division_round_trip(name):
    geom = geometries.builtin(name)
    cap = 2
    p0 = p0_series(geom, cap)
    assert lefschetz_series(geom, cap) * p0 == lefschetz_numerator(geom, cap)


def test_ladder_bottom_and_first_rung():
    geom = geometries.builtin("p2-line")
    ring = build_ring(geom)
    beta = geom.class_from_degree(1)
    rungs = relative_ladder(geom, beta)
    S = s_function(geom, ring, beta)
    assert rungs[0] == S
    assert rungs[1] == S * ring.var(0)
    with pytest.raises(InvalidInput):
        relative_ladder(geom, beta, 2)


@pytest.mark.parametrize("name", geometries.semipositive_names())
def test_telescoping(name):
    geom = geometries.builtin(name)
    for beta in enumerate_effective(geom, 2):
        if geom.y_dot(beta) >= 1:
            assert telescoping_check(geom, beta)


@pytest.mark.parametrize("name,d,value", [("quintic", 1, 24), ("quintic", 2, 11340), ("p3-quartic", 1, 6)])
def test_relative_point_invariant(name, d, value):
    geom = geometries.builtin(name)
    assert relative_point_invariant(geom, geom.class_from_degree(d)) == value


@pytest.mark.parametrize("name,d", [("quintic", 1), ("p3-quartic", 1), ("p3-quartic", 2), ("p2-line", 1),
                                    ("p2-cubic", 2), ("p2xp2-cy", 1)])
def test_wallcross(name, d):
    geom = geometries.builtin(name)
    betas = [b for b in enumerate_effective(geom, d) if geom.degree(b) == d]
    for beta in betas:
        assert wallcross_check(geom, beta)


def test_wallcross_sides_agree_with_direct_product():
    geom = geometries.builtin("quintic")
    ring = build_ring(geom)
    Y = ring.divisor(geom.Y)
    beta = geom.class_from_degree(1)
    expected = ZElement.const(Y * Y) * s_function(geom, ring, beta)
    for j in range(1, 5):
        expected = expected * ZElement.linear(Y, j)
    sides = wallcross_sides(geom, beta)
    assert sides.lhs == expected == sides.rhs
    assert relative_I(geom, beta) * Y == sides.lhs
    assert (fty_I(geom, beta) * Y * Y).shift(-1) == sides.rhs


def test_relative_functions_need_contact():
    geom = geometries.builtin("quintic")
    with pytest.raises(InvalidInput):
        relative_point_invariant(geom, geom.zero_class())


def test_comb_quintic_degree_one_below_top():
    geom = geometries.builtin("quintic")
    beta = geom.class_from_degree(1)
    for m in range(5):
        report = comb_vanishing_report(geom, beta, m)
        assert not report.anything_survives and report.certified


def test_comb_fano_only_zero_teeth_at_top():
    geom = geometries.builtin("p3-cubic")
    for d in (1, 2, 3):
        beta = geom.class_from_degree(d)
        report = comb_vanishing_report(geom, beta, 3 * d)
        assert [p.kind for p in report.surviving] == ["zero-teeth"]
        assert report.certified


def test_comb_quintic_degree_two_at_top():
    geom = geometries.builtin("quintic")
    report = comb_vanishing_report(geom, geom.class_from_degree(2), 10)
    surviving = {(p.kind, p.beta1 and geom.degree(p.beta1), p.m1, p.weight) for p in report.surviving}
    assert surviving == {("zero-teeth", None, None, 1), ("one-tooth", 1, 5, 5)}
    d = report.as_dict()
    assert d["m"] == 10 and len(d["profiles"]) == len(report.profiles)
