"""The rational Chow ring of a smooth complete toric variety.

``H*(X; Q) = Q[x_rho] / (Stanley-Reisner + linear relations)``, with
elements kept in Groebner normal form over the standard monomials.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import DegenerateTopDegree, RingMismatch, SingularPairing
from .groebner import Monomial, Poly, divides, grevlex_key, groebner_basis, leading, mono_mul, reduce
from .toric import DivisorClass, Fan, Geometry, validate_fan


def _monomials(nvars: int, degree: int) -> Iterable[Monomial]:
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for e in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - e):
            yield (e,) + rest


class ChowRing:
    def __init__(self, fan: Fan):
        validate_fan(fan)
        self.fan = fan
        self.dim = fan.dim
        self.nvars = fan.n_rays
        self.ideal_generators = self._stanley_reisner() + self._linear_relations()
        self.gb = groebner_basis(self.ideal_generators)
        leads = [leading(g) for g in self.gb]
        self.basis_by_degree: list[list[Monomial]] = []
        for d in range(self.dim + 1):
            mons = [m for m in _monomials(self.nvars, d) if not any(divides(l, m) for l in leads)]
            self.basis_by_degree.append(sorted(mons, key=grevlex_key, reverse=True))
        if len(self.basis_by_degree[self.dim]) != 1:
            raise DegenerateTopDegree(
                f"top degree piece has dimension {len(self.basis_by_degree[self.dim])}")
        self.basis: list[Monomial] = [m for layer in self.basis_by_degree for m in layer]
        self._position = {m: i for i, m in enumerate(self.basis)}
        self._mul_cache: dict[Monomial, dict[Monomial, Fraction]] = {}
        self.top = self.basis_by_degree[self.dim][0]
        c = self._normal_form_monomial(self.cone_monomial(fan.max_cones[0])).get(self.top, Fraction(0))
        if c == 0:
            raise DegenerateTopDegree("cone monomial reduces to zero")
        # integral of the standard top monomial
        self.top_integral = 1 / c

    def _stanley_reisner(self) -> list[Poly]:
        fan = self.fan
        nonfaces: list[frozenset[int]] = []
        for size in range(2, fan.dim + 2):
            for subset in itertools.combinations(range(fan.n_rays), size):
                s = frozenset(subset)
                if any(nf <= s for nf in nonfaces):
                    continue
                if not fan.is_face(s):
                    nonfaces.append(s)
        return [{tuple(int(i in s) for i in range(fan.n_rays)): Fraction(1)} for s in nonfaces]

    def _linear_relations(self) -> list[Poly]:
        rels = []
        for r in range(self.dim):
            p = {}
            for i, ray in enumerate(self.fan.rays):
                if ray[r]:
                    p[tuple(int(j == i) for j in range(self.nvars))] = Fraction(ray[r])
            rels.append(p)
        return rels

    def cone_monomial(self, cone: Iterable[int]) -> Monomial:
        s = set(cone)
        return tuple(int(i in s) for i in range(self.nvars))

    def _normal_form_monomial(self, m: Monomial) -> dict[Monomial, Fraction]:
        if m in self._mul_cache:
            return self._mul_cache[m]
        if sum(m) > self.dim:
            nf = {}
        elif m in self._position:
            nf = {m: Fraction(1)}
        else:
            nf = reduce({m: Fraction(1)}, self.gb)
        self._mul_cache[m] = nf
        return nf

    # construction of elements

    @property
    def rank(self) -> int:
        return len(self.basis)

    def element(self, poly: Poly) -> ChowElement:
        acc: dict[Monomial, Fraction] = {}
        for m, c in poly.items():
            for bm, bc in self._normal_form_monomial(tuple(m)).items():
                v = acc.get(bm, 0) + c * bc
                if v:
                    acc[bm] = v
                else:
                    acc.pop(bm, None)
        return ChowElement(self, acc)

    def zero(self) -> ChowElement:
        return ChowElement(self, {})

    def one(self) -> ChowElement:
        return self.scalar(1)

    def scalar(self, c) -> ChowElement:
        c = Fraction(c)
        return ChowElement(self, {(0,) * self.nvars: c} if c else {})

    def var(self, i: int) -> ChowElement:
        return self.element({tuple(int(j == i) for j in range(self.nvars)): Fraction(1)})

    def divisor(self, coeffs: Sequence[int] | DivisorClass) -> ChowElement:
        if isinstance(coeffs, DivisorClass):
            coeffs = coeffs.coeffs
        return self.element({tuple(int(j == i) for j in range(self.nvars)): Fraction(a)
                             for i, a in enumerate(coeffs) if a})

    def monomial(self, m: Monomial) -> ChowElement:
        return self.element({tuple(m): Fraction(1)})

    def point(self) -> ChowElement:
        return ChowElement(self, {self.top: 1 / self.top_integral})

    def basis_elements(self) -> list[ChowElement]:
        return [ChowElement(self, {m: Fraction(1)}) for m in self.basis]

    def integrate(self, a: ChowElement) -> Fraction:
        self._check(a)
        return a.coeffs.get(self.top, Fraction(0)) * self.top_integral

    def pairing_matrix(self, basis: Sequence[ChowElement]) -> list[list[Fraction]]:
        return [[self.integrate(a * b) for b in basis] for a in basis]

    def _check(self, a: ChowElement) -> None:
        if a.ring is not self:
            raise RingMismatch("element belongs to a different ring")

    def random_element(self, rng: random.Random, density: float = 0.5, bound: int = 5,
                       min_degree: int = 0) -> ChowElement:
        coeffs = {}
        for m in self.basis:
            if sum(m) >= min_degree and rng.random() < density:
                c = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                if c:
                    coeffs[m] = c
        return ChowElement(self, coeffs)

    def format_monomial(self, m: Monomial) -> str:
        parts = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e]
        return "*".join(parts) if parts else "1"

    def eta_basis(self, Y: ChowElement) -> tuple[list[ChowElement], list[ChowElement]]:
        """``(lower, upper)`` homogeneous bases with ``upper[0] = 1``, ``upper[1] = Y``.

        ``upper`` is the standard monomial basis in which ``Y`` replaces the
        first degree-one monomial it involves; ``lower`` is its Poincare dual,
        so ``lower[0]`` is the point class.
        """
        upper = self.basis_elements()
        if Y.is_homogeneous() and Y.degree() == 1:
            for idx, m in enumerate(self.basis):
                if sum(m) == 1 and Y.coeffs.get(m):
                    del upper[idx]
                    upper.insert(1, Y)
                    break
        return dual_basis(self, upper), upper


def build_ring(geom: Geometry | Fan) -> ChowRing:
    fan = geom.fan if isinstance(geom, Geometry) else geom
    cache = _RING_CACHE
    if fan not in cache:
        cache[fan] = ChowRing(fan)
    return cache[fan]


_RING_CACHE: dict[Fan, ChowRing] = {}


class ChowElement:
    """An element of a ChowRing in normal form.  Treated as immutable."""

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: ChowRing, coeffs: dict[Monomial, Fraction]):
        self.ring = ring
        self.coeffs = coeffs
        self._hash = None

    def _coerce(self, other) -> ChowElement | None:
        if isinstance(other, ChowElement):
            if other.ring is not self.ring:
                raise RingMismatch("elements belong to different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = acc.get(m, 0) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return ChowElement(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> ChowElement:
        return ChowElement(self.ring, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return self.ring.zero()
            return ChowElement(self.ring, {m: c * other for m, c in self.coeffs.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                for m, c in ring._normal_form_monomial(mono_mul(m1, m2)).items():
                    v = acc.get(m, 0) + c1 * c2 * c
                    if v:
                        acc[m] = v
                    else:
                        acc.pop(m, None)
        return ChowElement(ring, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> ChowElement:
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, ChowElement):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((id(self.ring), frozenset(self.coeffs.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def graded_part(self, d: int) -> ChowElement:
        return ChowElement(self.ring, {m: c for m, c in self.coeffs.items() if sum(m) == d})

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a non-zero homogeneous element."""
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("degree of a zero or inhomogeneous element")
        return next(iter(ds))

    def constant_term(self) -> Fraction:
        return self.coeffs.get((0,) * self.ring.nvars, Fraction(0))

    def sort_key(self) -> tuple:
        pos = self.ring._position
        return tuple(sorted((pos[m], c.numerator, c.denominator) for m, c in self.coeffs.items()))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pos = self.ring._position
        parts = []
        for m in sorted(self.coeffs, key=lambda m: pos[m]):
            c = self.coeffs[m]
            mono = self.ring.format_monomial(m)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def multiply(a: ChowElement, b: ChowElement) -> ChowElement:
    return a * b


def integrate(a: ChowElement) -> Fraction:
    return a.ring.integrate(a)


def dual_basis(ring: ChowRing, basis: Sequence[ChowElement]) -> list[ChowElement]:
    """Elements ``d_j`` with ``integrate(basis[i] * d_j) = delta_ij``."""
    if len(basis) != ring.rank:
        raise SingularPairing(f"expected {ring.rank} basis elements, got {len(basis)}")
    P = ring.pairing_matrix(basis)
    try:
        Q = linalg.inverse(P)
    except ValueError:
        raise SingularPairing("pairing matrix is singular") from None
    out = []
    for j in range(len(basis)):
        acc = ring.zero()
        for k, b in enumerate(basis):
            if Q[k][j]:
                acc = acc + b * Q[k][j]
        out.append(acc)
    return out
