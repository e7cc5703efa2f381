from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toricqm import geometries
from toricqm.chow import build_ring
from toricqm.errors import NonUnitDenominator, ZeroJ
from toricqm.givental import s_function
from toricqm.series import NovikovSeries, ZElement, extract_invariants, invert_linear, novikov_divide
from toricqm.toric import DivisorClass, Geometry, projective_space


@pytest.fixture(scope="module")
def p1():
    fan = projective_space(1)
    return Geometry(fan, DivisorClass(fan, (1, 0)), DivisorClass(fan, (1, 0)),
                    contains_all_curve_classes=False, name="p1")


def test_invert_linear_on_p1(p1):
    ring = build_ring(p1)
    H = ring.var(0)
    inv = invert_linear(H, 1)
    assert inv == ZElement(ring, {-1: ring.one(), -2: -H})
    assert inv * ZElement.linear(H, 1) == ZElement.one(ring)


def test_invert_zero_divisor():
    ring = build_ring(projective_space(2))
    assert invert_linear(ring.zero(), 2) == ZElement(ring, {-1: ring.scalar(Fraction(1, 2))})
    with pytest.raises(ZeroJ):
        invert_linear(ring.var(0), 0)


def test_extract_invariants_p1(p1):
    ring = build_ring(p1)
    H = ring.var(0)
    S = s_function(p1, ring, p1.class_from_degree(1))
    assert S == ZElement(ring, {-2: ring.one(), -3: H * -2})
    lower, upper = ring.eta_basis(H)
    assert lower == [H, ring.one()]
    assert extract_invariants(S, lower) == {(0, 1): 1, (1, 2): -2}


def test_extract_invariants_degree_zero_is_empty(p1):
    ring = build_ring(p1)
    assert extract_invariants(ZElement.one(ring), ring.eta_basis(ring.var(0))[0]) == {}


def test_p4_point_psi4():
    geom = geometries.builtin("quintic")
    ring = build_ring(geom)
    S = s_function(geom, ring, geom.class_from_degree(1))
    table = extract_invariants(S, [ring.point()])
    assert table[(0, 4)] == 1


def _p2_series(cap, terms):
    geom = geometries.builtin("p2-line")
    return NovikovSeries(geom, cap, {geom.class_from_degree(d): c for d, c in terms.items()})


def test_divide_by_one_is_identity():
    num = _p2_series(3, {0: 1, 1: 5, 3: Fraction(-2, 3)})
    assert novikov_divide(num, _p2_series(3, {0: 1})) == num


def test_divide_formal_oracle():
    geom = geometries.builtin("p2-line")
    ring = build_ring(geom)
    A = ZElement(ring, {-1: ring.var(0) * 3, 0: ring.one()})
    c = Fraction(7, 2)
    one = ZElement.one(ring)
    num = _p2_series(2, {0: one, 1: A})
    den = _p2_series(2, {0: 1, 1: c})
    want = _p2_series(2, {0: one, 1: A - one * c, 2: one * (c * c) - A * c})
    assert novikov_divide(num, den) == want


def test_divide_rejects_non_unit():
    with pytest.raises(NonUnitDenominator):
        novikov_divide(_p2_series(2, {0: 1}), _p2_series(2, {0: 2}))


def test_truncation_drops_high_degrees():
    s = _p2_series(2, {0: 1, 1: 1, 2: 1, 3: 1})
    assert len(s.terms) == 3
    assert len(s.truncate(1).terms) == 2


_RING = build_ring(geometries.builtin("p1xp2-k3"))


@st.composite
def zelements(draw):
    terms = {}
    for k in draw(st.lists(st.integers(-4, 2), max_size=3, unique=True)):
        coeffs = draw(st.lists(st.integers(-4, 4), min_size=_RING.rank, max_size=_RING.rank))
        terms[k] = _RING.element({m: Fraction(c) for m, c in zip(_RING.basis, coeffs) if c})
    return ZElement(_RING, terms)


@settings(max_examples=50, deadline=None)
@given(zelements(), zelements(), zelements())
def test_zelement_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * ZElement.one(_RING) == a
    assert (a - a).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 6).filter(bool), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_inverse_round_trip(j, coeffs):
    D = _RING.divisor((coeffs[0], 0, coeffs[1], 0, coeffs[2]))
    assert invert_linear(D, j) * ZElement.linear(D, j) == ZElement.one(_RING)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=4), min_size=4, max_size=4),
       st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=4), min_size=4, max_size=4))
def test_division_round_trip(nums, dens):
    cap = 3
    num = _p2_series(cap, dict(enumerate(nums)))
    den = _p2_series(cap, {0: 1, **{d + 1: c for d, c in enumerate(dens[:3])}})
    assert novikov_divide(num, den) * den == num
