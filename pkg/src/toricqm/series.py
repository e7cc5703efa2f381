"""Laurent polynomials in ``z`` over a Chow ring, and truncated Novikov series."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .chow import ChowElement, ChowRing
from .errors import NonUnitDenominator, RingMismatch, ZeroJ
from .toric import CurveClass, Geometry


class ZElement:
    """``sum_k c_k z^k`` with ``c_k`` in a Chow ring.  Immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ChowRing, terms: dict[int, ChowElement] | None = None):
        self.ring = ring
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: ChowElement) -> ZElement:
        return cls(c.ring, {0: c})

    @classmethod
    def one(cls, ring: ChowRing) -> ZElement:
        return cls(ring, {0: ring.one()})

    @classmethod
    def linear(cls, D: ChowElement, j: int) -> ZElement:
        """``D + j z``."""
        return cls(D.ring, {0: D, 1: D.ring.scalar(j)})

    def coefficient(self, k: int) -> ChowElement:
        return self.terms.get(k, self.ring.zero())

    def z_support(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def shift(self, k: int) -> ZElement:
        """Multiply by ``z^k``."""
        return ZElement(self.ring, {e + k: c for e, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, ChowElement):
            other = ZElement.const(other)
        if not isinstance(other, ZElement):
            return NotImplemented
        if other.ring is not self.ring:
            raise RingMismatch("z-series over different rings")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return ZElement(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> ZElement:
        return ZElement(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return -self
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or isinstance(other, ChowElement):
            return ZElement(self.ring, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, ZElement):
            return NotImplemented
        if other.ring is not self.ring:
            raise RingMismatch("z-series over different rings")
        terms: dict[int, ChowElement] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                p = ca * cb
                terms[a + b] = terms[a + b] + p if a + b in terms else p
        return ZElement(self.ring, terms)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other) -> bool:
        if isinstance(other, ChowElement):
            other = ZElement.const(other)
        if not isinstance(other, ZElement):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*z^{k}" for k, c in sorted(self.terms.items(), reverse=True))

    __repr__ = __str__


def invert_linear(D: ChowElement, j: int) -> ZElement:
    """``(D + j z)^{-1}`` expanded by nilpotency of ``D``."""
    if j == 0:
        raise ZeroJ("D + 0z is not invertible")
    if D.constant_term():
        raise ValueError("D must have no degree-zero part")
    ring = D.ring
    terms = {}
    power = ring.one()
    j = Fraction(j)
    for k in range(ring.dim + 1):
        if power.is_zero():
            break
        terms[-k - 1] = power * ((-1) ** k / j ** (k + 1))
        power = power * D
    return ZElement(ring, terms)


class NovikovSeries:
    """Finitely many ``q^beta`` coefficients, truncated at ``degree(beta) <= cap``.

    Coefficients may be rationals or ZElements; ``degree`` measures classes
    (normally ``Geometry.degree``).
    """

    def __init__(self, geom: Geometry, cap: int, terms: dict[CurveClass, object] | None = None):
        self.geom = geom
        self.cap = cap
        self.terms: dict[CurveClass, object] = {}
        for beta, c in (terms or {}).items():
            if geom.degree(beta) <= cap and not _is_zero(c):
                self.terms[beta] = c

    def __getitem__(self, beta: CurveClass):
        return self.terms.get(beta, 0)

    def get(self, beta: CurveClass, default=None):
        return self.terms.get(beta, default)

    def keys_sorted(self) -> list[CurveClass]:
        return sorted(self.terms, key=lambda b: (self.geom.degree(b), b.pairings))

    def truncate(self, cap: int) -> NovikovSeries:
        return NovikovSeries(self.geom, min(cap, self.cap), self.terms)

    def __add__(self, other: NovikovSeries) -> NovikovSeries:
        terms = dict(self.terms)
        for b, c in other.terms.items():
            terms[b] = terms[b] + c if b in terms else c
        return NovikovSeries(self.geom, min(self.cap, other.cap), terms)

    def __mul__(self, other: NovikovSeries) -> NovikovSeries:
        cap = min(self.cap, other.cap)
        terms: dict[CurveClass, object] = {}
        for b1, c1 in self.terms.items():
            for b2, c2 in other.terms.items():
                b = b1 + b2
                if self.geom.degree(b) > cap:
                    continue
                p = c1 * c2
                terms[b] = terms[b] + p if b in terms else p
        return NovikovSeries(self.geom, cap, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


def novikov_divide(num: NovikovSeries, den: NovikovSeries) -> NovikovSeries:
    """``num / den`` for a scalar ``den`` with constant term 1."""
    zero = num.geom.zero_class()
    if den[zero] != 1:
        raise NonUnitDenominator(f"denominator constant term is {den[zero]}, expected 1")
    cap = min(num.cap, den.cap)
    geom = num.geom
    # res[b] = num[b] - sum_{g > 0} den[g] res[b - g], processed in degree order
    targets = set(num.terms)
    # all classes reachable as sums of num keys and den keys within cap
    frontier = set(targets)
    while frontier:
        new = set()
        for b in frontier:
            for g in den.terms:
                if g == zero:
                    continue
                s = b + g
                if geom.degree(s) <= cap and s not in targets:
                    new.add(s)
        targets |= new
        frontier = new
    res: dict[CurveClass, object] = {}
    for b in sorted(targets, key=lambda b: (geom.degree(b), b.pairings)):
        acc = num.terms.get(b, 0)
        for g, c in den.terms.items():
            if g == zero:
                continue
            prev = res.get(b - g)
            if prev is not None:
                acc = acc - prev * c
        if not _is_zero(acc):
            res[b] = acc
    return NovikovSeries(geom, cap, res)


def extract_invariants(S: ZElement, lower: Sequence[ChowElement]) -> dict[tuple[int, int], Fraction]:
    """``{(i, k): <eta_i psi^k, 1>}`` read off ``S`` as ``integrate(eta_i * [z^{-k-1}] S)``."""
    ring = S.ring
    table = {}
    for e, c in S.terms.items():
        if e >= 0:
            continue
        k = -e - 1
        for i, eta in enumerate(lower):
            v = ring.integrate(eta * c)
            if v:
                table[(i, k)] = v
    return table
