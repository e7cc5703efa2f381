"""Quantum Lefschetz for semipositive hypersurfaces, the relative ladder and wall-crossing.

Every series valued in the cohomology of Y is carried as its push-forward to
X (an "avatar"); restricting and pushing forward again is multiplication by
the class of Y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .chow import ChowElement, build_ring
from .errors import InvalidInput
from .givental import pt_psi_invariant, s_function
from .series import NovikovSeries, ZElement, novikov_divide
from .toric import CurveClass, Geometry, enumerate_effective, is_effective


def _y_class(geom: Geometry) -> ChowElement:
    return build_ring(geom).divisor(geom.Y)


@lru_cache(maxsize=None)
def _s_function(geom: Geometry, beta: CurveClass) -> ZElement:
    return s_function(geom, build_ring(geom), beta)


def p0_series(geom: Geometry, cap: int) -> NovikovSeries:
    """The correction series ``P_0(q)``; rational coefficients."""
    geom.require_semipositive()
    terms: dict[CurveClass, Fraction] = {geom.zero_class(): Fraction(1)}
    for beta in enumerate_effective(geom, cap):
        if geom.ky_dot(beta) == 0:
            terms[beta] = factorial(geom.y_dot(beta)) * pt_psi_invariant(geom, beta)
    return NovikovSeries(geom, cap, terms)


def lefschetz_numerator(geom: Geometry, cap: int) -> NovikovSeries:
    """``sum_beta q^beta prod_{j=0}^{Y.beta} (Y + jz) S_0^X(z, beta)``."""
    geom.require_semipositive()
    Y = _y_class(geom)
    terms = {geom.zero_class(): ZElement.const(Y)}
    for beta in enumerate_effective(geom, cap):
        out = _s_function(geom, beta) * Y
        for j in range(1, geom.y_dot(beta) + 1):
            out = out * ZElement.linear(Y, j)
        terms[beta] = out
    return NovikovSeries(geom, cap, terms)


@lru_cache(maxsize=None)
def lefschetz_series(geom: Geometry, cap: int) -> NovikovSeries:
    """The restricted S-function of Y (as an avatar), numerator divided by ``P_0``."""
    return novikov_divide(lefschetz_numerator(geom, cap), p0_series(geom, cap))


def relative_ladder(geom: Geometry, beta: CurveClass, upto: int | None = None) -> list[ZElement]:
    """Rungs ``S~_(m)`` for ``m = 0..upto`` (default ``Y.beta``).

    Below the top the comb correction vanishes, so each rung is the previous
    one times ``(Y + mz)``.
    """
    geom.require_semipositive()
    e = geom.y_dot(beta)
    upto = e if upto is None else upto
    if not 0 <= upto <= e:
        raise InvalidInput(f"ladder rung must lie in 0..{e}")
    return list(_ladder(geom, beta)[:upto + 1])


@lru_cache(maxsize=None)
def _ladder(geom: Geometry, beta: CurveClass) -> tuple[ZElement, ...]:
    Y = _y_class(geom)
    rungs = [_s_function(geom, beta)]
    for m in range(geom.y_dot(beta)):
        rungs.append(ZElement.linear(Y, m) * rungs[-1])
    return tuple(rungs)


def telescoping_check(geom: Geometry, beta: CurveClass) -> bool:
    """``prod_{j=0}^{e} (Y + jz) S = (Y + ez) S~_(e)`` as z-series."""
    Y = _y_class(geom)
    e = geom.y_dot(beta)
    lhs = _s_function(geom, beta)
    for j in range(e + 1):
        lhs = lhs * ZElement.linear(Y, j)
    top = relative_ladder(geom, beta)[-1]
    return lhs == ZElement.linear(Y, e) * top


def relative_point_invariant(geom: Geometry, beta: CurveClass) -> Fraction:
    """``<rho_1, 1>`` with full tangency ``(Y.beta, 0)`` at the first marking."""
    e = geom.y_dot(beta)
    if e < 1:
        raise InvalidInput("need Y.beta >= 1")
    return factorial(e - 1) * pt_psi_invariant(geom, beta)


def relative_I(geom: Geometry, beta: CurveClass) -> ZElement:
    """Avatar of the relative I-function, the top ladder rung."""
    if geom.y_dot(beta) < 1:
        raise InvalidInput("relative I-function is undefined for Y.beta = 0")
    return relative_ladder(geom, beta)[-1]


def fty_I(geom: Geometry, beta: CurveClass) -> ZElement:
    """``J^X_beta(z) prod_{m=1}^{e-1} (Y + mz)`` before restriction, with ``J = z S``."""
    e = geom.y_dot(beta)
    if e < 1:
        raise InvalidInput("FTY I-function is undefined for Y.beta = 0")
    geom.require_fano()
    Y = _y_class(geom)
    out = s_function(geom, build_ring(geom), beta).shift(1)
    for m in range(1, e):
        out = out * ZElement.linear(Y, m)
    return out


@dataclass
class WallcrossResult:
    beta: CurveClass
    lhs: ZElement
    rhs: ZElement

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def wallcross_sides(geom: Geometry, beta: CurveClass) -> WallcrossResult:
    """Both sides of ``i^* i_* I = z^{-1} i^* i_* I_FTY`` as avatars."""
    Y = _y_class(geom)
    lhs = relative_I(geom, beta) * Y
    rhs = (fty_I(geom, beta) * Y * Y).shift(-1)
    return WallcrossResult(beta, lhs, rhs)


def wallcross_check(geom: Geometry, beta: CurveClass) -> bool:
    return wallcross_sides(geom, beta).passed


# --- dimension audit of the comb loci -------------------------------------

@dataclass(frozen=True)
class CombProfileReport:
    kind: str                   # "zero-teeth" or "one-tooth"
    beta0: CurveClass
    beta1: CurveClass | None
    m1: int | None
    weight: int
    excess: int | None          # dim Y - vdim of the tooth; the gluing class has this codimension
    survives: bool

    def as_dict(self) -> dict:
        return {"kind": self.kind, "beta0": list(self.beta0.pairings),
                "beta1": None if self.beta1 is None else list(self.beta1.pairings),
                "m1": self.m1, "weight": self.weight, "excess": self.excess,
                "survives": self.survives}


@dataclass
class CombVanishingReport:
    beta: CurveClass
    m: int
    top: int
    relative_vdim: int
    relative_term_survives: bool
    profiles: list[CombProfileReport] = field(default_factory=list)

    @property
    def surviving(self) -> list[CombProfileReport]:
        return [p for p in self.profiles if p.survives]

    @property
    def anything_survives(self) -> bool:
        return self.relative_term_survives or bool(self.surviving)

    @property
    def certified(self) -> bool:
        """Nothing survives below the top rung, and no excess is positive."""
        ok_excess = all(p.excess is None or p.excess <= 0 for p in self.profiles)
        return ok_excess and (self.m == self.top or not self.anything_survives)

    def as_dict(self) -> dict:
        return {"beta": list(self.beta.pairings), "m": self.m, "top": self.top,
                "relative_vdim": self.relative_vdim,
                "relative_term_survives": self.relative_term_survives,
                "profiles": [p.as_dict() for p in self.profiles]}


def comb_vanishing_report(geom: Geometry, beta: CurveClass, m: int) -> CombVanishingReport:
    """Classify the pieces of the correction term at rung ``m`` by dimension.

    With two markings and the first on the internal component, a comb has
    zero teeth (``Y.beta = m``) or one tooth carrying the second marking.  A
    tooth of class ``beta1`` and contact order ``m1`` survives only when the
    gluing class ``rho^h`` can have codimension ``K_Y.beta1 - Y.beta1 + m1``,
    which is non-positive under semipositivity.
    """
    geom.require_semipositive()
    e = geom.y_dot(beta)
    n = geom.dim
    kx = geom.kx_dot(beta)
    # the relative term m [Q_(m,0)] admits only insertions of dimension <= 1
    rel_vdim = n - 3 - kx + 2 - m
    rel_survives = m > 0 and rel_vdim == n - 1
    report = CombVanishingReport(beta, m, e, rel_vdim, rel_survives)
    if e == m:
        report.profiles.append(CombProfileReport("zero-teeth", beta, None, None, 1, None, True))
    degree = geom.degree(beta)
    for beta1 in enumerate_effective(geom, degree):
        beta0 = beta - beta1
        if beta0.is_zero() or not is_effective(geom, beta0):
            continue
        for m1 in range(1, geom.y_dot(beta1) + 1):
            if geom.y_dot(beta0) + m1 != m:
                continue
            excess = geom.ky_dot(beta1) - geom.y_dot(beta1) + m1
            report.profiles.append(CombProfileReport("one-tooth", beta0, beta1, m1, m1, excess, excess == 0))
    return report
