from fractions import Fraction
from math import factorial

import pytest

from toricqm import geometries
from toricqm.chow import build_ring
from toricqm.errors import InvalidInput, NotFano
from toricqm.givental import j0_coefficient, pt_psi_invariant, s_function
from toricqm.series import ZElement
from toricqm.toric import CurveClass, DivisorClass, Geometry, enumerate_effective, hirzebruch


@pytest.mark.parametrize("name,N", [("p2-line", 2), ("p3-plane", 3), ("quintic", 4)])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_projective_space_closed_form(name, N, d):
    geom = geometries.builtin(name)
    ring = build_ring(geom)
    S = s_function(geom, ring, geom.class_from_degree(d))
    H = ring.var(0)
    product = S
    for j in range(1, d + 1):
        for _ in range(N + 1):
            product = product * ZElement.linear(H, j)
    assert product == ZElement.one(ring)


@pytest.mark.parametrize("name", geometries.names())
def test_degree_zero_is_one(name):
    geom = geometries.builtin(name)
    ring = build_ring(geom)
    assert s_function(geom, ring, geom.zero_class()) == ZElement.one(ring)


def test_negative_pairing_contributes_the_divisor():
    geom = geometries.builtin("f1-anticanonical")
    ring = build_ring(geom)
    exceptional = next(w for w in geom.walls if min(w.pairings) < 0)
    S = s_function(geom, ring, exceptional)
    restore = S
    for rho, p in enumerate(exceptional.pairings):
        for j in range(1, p + 1):
            restore = restore * ZElement.linear(ring.var(rho), j)
    rho_neg = exceptional.pairings.index(-1)
    assert restore == ZElement.const(ring.var(rho_neg))


def test_non_fano_rejected():
    fan = hirzebruch(2)
    D = DivisorClass(fan, (1, 1, 3, 3))
    geom = Geometry(fan, D, D, contains_all_curve_classes=False)
    with pytest.raises(NotFano):
        s_function(geom, None, geom.walls[0])


@pytest.mark.parametrize("d,value", [(1, 120), (2, 113400), (3, 168168000)])
def test_j0_quintic(d, value):
    geom = geometries.builtin("quintic")
    assert j0_coefficient(geom, geom.class_from_degree(d)) == value
    assert value == factorial(5 * d) // factorial(d) ** 5


def test_j0_quartic_and_fano():
    quartic = geometries.builtin("p3-quartic")
    assert j0_coefficient(quartic, quartic.class_from_degree(1)) == 24
    cubic = geometries.builtin("p3-cubic")
    assert j0_coefficient(cubic, cubic.class_from_degree(1)) == 0


@pytest.mark.parametrize("name,d,value", [("quintic", 1, 1), ("p3-quartic", 1, 1),
                                          ("p3-quartic", 2, Fraction(1, 16))])
def test_pt_psi_invariant(name, d, value):
    geom = geometries.builtin(name)
    assert pt_psi_invariant(geom, geom.class_from_degree(d)) == value


def test_pt_psi_needs_positive_contact():
    geom = geometries.builtin("quintic")
    with pytest.raises(InvalidInput):
        pt_psi_invariant(geom, geom.zero_class())


@pytest.mark.parametrize("name", geometries.names())
def test_cross_oracle(name):
    geom = geometries.builtin(name)
    for beta in enumerate_effective(geom, 3):
        e = geom.y_dot(beta)
        if e >= 1:
            assert factorial(e) * pt_psi_invariant(geom, beta, check=False) == j0_coefficient(geom, beta)


@pytest.mark.parametrize("pairings,value", [((1, 1, 0, 0, 0), 2), ((0, 0, 1, 1, 1), 6),
                                             ((1, 1, 1, 1, 1), 120), ((2, 2, 1, 1, 1), 1260)])
def test_j0_k3_in_p1xp2(pairings, value):
    # (2a + 3b)! / (a!^2 b!^3) evaluated by hand
    geom = geometries.builtin("p1xp2-k3")
    assert j0_coefficient(geom, CurveClass(pairings)) == value
