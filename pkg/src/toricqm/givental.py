"""Givental's closed form for the two-pointed S-function of a toric Fano variety."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .chow import ChowRing, build_ring
from .errors import InvalidInput, OracleMismatch
from .series import ZElement, extract_invariants, invert_linear
from .toric import CurveClass, Geometry


def s_function(geom: Geometry, ring: ChowRing | None, beta: CurveClass) -> ZElement:
    """``S_0^X(z, beta)``.

    A ray with ``D.beta = p > 0`` contributes ``prod_{j=1}^{p} (D + jz)^{-1}``;
    with ``p < 0`` it contributes ``prod_{j=p+1}^{0} (D + jz)``, whose ``j = 0``
    factor is the nilpotent class ``D`` itself.
    """
    geom.require_fano()
    ring = ring or build_ring(geom)
    if len(beta.pairings) != geom.n_rays:
        raise InvalidInput("curve class has the wrong number of pairings")
    out = ZElement.one(ring)
    for rho, p in enumerate(beta.pairings):
        D = ring.var(rho)
        if p > 0:
            for j in range(1, p + 1):
                out = out * invert_linear(D, j)
        elif p < 0:
            for j in range(p + 1, 1):
                out = out * ZElement.linear(D, j)
    return out


def j0_coefficient(geom: Geometry, beta: CurveClass) -> Fraction:
    """Coefficient of ``q^beta`` in ``J_0(q)``, the ``1 z^0`` part of the J-function of Y.

    The closed form applies only where the grading allows a constant term:
    ``K_Y.beta = 0``, and no ray with ``D.beta < 0`` (such a ray contributes
    the nilpotent factor ``D`` at ``j = 0``).  Elsewhere the coefficient is 0.
    """
    if geom.ky_dot(beta) != 0 or any(p < 0 for p in beta.pairings):
        return Fraction(0)
    den = 1
    for p in beta.pairings:
        den *= factorial(p)
    return Fraction(factorial(geom.y_dot(beta)), den)


def pt_psi_invariant(geom: Geometry, beta: CurveClass, ring: ChowRing | None = None,
                     check: bool = True) -> Fraction:
    """``<[pt] psi^{Y.beta - 1}, 1>`` read off the S-function, cross-checked against J_0."""
    e = geom.y_dot(beta)
    if e < 1:
        raise InvalidInput("need Y.beta >= 1")
    ring = ring or build_ring(geom)
    table = extract_invariants(s_function(geom, ring, beta), [ring.point()])
    value = table.get((0, e - 1), Fraction(0))
    if check:
        expected = j0_coefficient(geom, beta) / factorial(e)
        if value != expected:
            raise OracleMismatch(f"beta={beta}: S-function gives {value}, J_0 closed form {expected}")
    return value
