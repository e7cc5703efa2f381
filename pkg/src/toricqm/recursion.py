"""Symbolic reduction of relative invariants to absolute ones.

A relative invariant of ``(X|Y)`` is rewritten one tangency unit at a time:
lowering the contact order at marking ``k`` produces a psi-raised term, a
term with ``[Y]`` inserted, and a sum over comb loci (an internal component
in ``Y`` with teeth meeting ``Y``).  Repeating this ends in invariants of
``X`` and of ``Y`` only.

Classes of ``Y`` that do not come from ``X`` are never computed; the
diagonal of ``Y`` is split over symbolic tokens ``rho_h`` / ``rho^h`` with
``h = 1..l``, of which the first ``k`` are restricted from ``X``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from . import linalg
from .chow import ChowElement, ChowRing, build_ring
from .errors import InvalidInput, MeasureViolation, NoTangency, UnsupportedRegime
from .toric import CurveClass, Geometry, enumerate_effective, is_effective


# --- symbolic data ---------------------------------------------------------

@dataclass(frozen=True)
class Token:
    """``rho^h`` (upper) or ``rho_h`` (lower), times ``[Y]^ypow``."""

    index: int
    upper: bool
    ypow: int = 0

    def label(self) -> str:
        base = f"ρ^{self.index}" if self.upper else f"ρ_{self.index}"
        if self.ypow == 1:
            return base + "·Y"
        if self.ypow:
            return base + f"·Y^{self.ypow}"
        return base


Insertion = Union[ChowElement, Token]


def _insertion_key(ins: Insertion) -> tuple:
    if isinstance(ins, Token):
        return (1, ins.index, not ins.upper, ins.ypow)
    return (0, ins.sort_key())


def _insertion_label(ins: Insertion) -> str:
    if isinstance(ins, Token):
        return ins.label()
    s = str(ins)
    return s if len(ins.coeffs) <= 1 else f"({s})"


@dataclass(frozen=True)
class Marking:
    insertion: Insertion
    psi: int = 0
    tangency: int = 0

    def key(self) -> tuple:
        return (-self.tangency, -self.psi, _insertion_key(self.insertion))

    def label(self) -> str:
        s = _insertion_label(self.insertion)
        if self.psi == 1:
            s += " ψ"
        elif self.psi:
            s += f" ψ^{self.psi}"
        if self.tangency:
            s += f" |{self.tangency}"
        return s


class Kind(Enum):
    ABS_X = "X"
    ABS_Y = "Y"
    REL = "X|Y"


_KIND_ORDER = {Kind.REL: 0, Kind.ABS_Y: 1, Kind.ABS_X: 2}


@dataclass(frozen=True)
class InvariantLeaf:
    """A genus-zero invariant; markings are kept in canonical order."""

    kind: Kind
    beta: CurveClass
    markings: tuple[Marking, ...]

    def __init__(self, kind: Kind, beta: CurveClass, markings: Iterable[Marking]):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "markings", tuple(sorted(markings, key=Marking.key)))
        if kind is not Kind.REL and any(m.tangency for m in self.markings):
            raise InvalidInput("absolute invariants carry no tangency")

    @property
    def n(self) -> int:
        return len(self.markings)

    @property
    def alpha(self) -> tuple[int, ...]:
        return tuple(m.tangency for m in self.markings)

    def key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.beta.pairings, tuple(m.key() for m in self.markings))

    def measure(self, geom: Geometry) -> tuple[int, int, int]:
        d = geom.y_dot(self.beta)
        if self.kind is Kind.ABS_Y:
            return (d, self.n, d + 1)
        return (d, self.n, sum(self.alpha))

    def tokens(self) -> list[Token]:
        return [m.insertion for m in self.markings if isinstance(m.insertion, Token)]

    def __str__(self) -> str:
        inner = ", ".join(m.label() for m in self.markings)
        return f"⟨{inner}⟩^{{{self.kind.value}}}_{{0,{self.beta}}}"

    def as_json(self) -> dict:
        marks = []
        for m in self.markings:
            ins = m.insertion
            if isinstance(ins, Token):
                enc = {"token": {"index": ins.index, "upper": ins.upper, "ypow": ins.ypow}}
            else:
                enc = {"class": {ins.ring.format_monomial(mono): str(c) for mono, c in ins.coeffs.items()}}
            marks.append({"insertion": enc, "psi": m.psi, "tangency": m.tangency})
        return {"kind": self.kind.value, "beta": list(self.beta.pairings), "markings": marks}


Product = tuple[InvariantLeaf, ...]


class Expression:
    """Rational combination of products of leaves; like terms merged."""

    def __init__(self, terms: dict[Product, Fraction] | None = None):
        self.terms: dict[Product, Fraction] = {}
        for prod, c in (terms or {}).items():
            self._add(prod, c)

    def _add(self, prod: Sequence[InvariantLeaf], c) -> None:
        prod = tuple(sorted(prod, key=InvariantLeaf.key))
        v = self.terms.get(prod, 0) + Fraction(c)
        if v:
            self.terms[prod] = v
        else:
            self.terms.pop(prod, None)

    @classmethod
    def leaf(cls, leaf: InvariantLeaf, c=1) -> Expression:
        return cls({(leaf,): Fraction(c)})

    @classmethod
    def scalar(cls, c) -> Expression:
        return cls({(): Fraction(c)})

    def __add__(self, other: Expression) -> Expression:
        out = Expression(self.terms)
        for p, c in other.terms.items():
            out._add(p, c)
        return out

    def __mul__(self, other) -> Expression:
        if isinstance(other, (int, Fraction)):
            return Expression({p: c * other for p, c in self.terms.items()})
        out = Expression()
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                out._add(p1 + p2, c1 * c2)
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Expression) and self.terms == other.terms

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> list[tuple[Product, Fraction]]:
        return sorted(self.terms.items(), key=lambda pc: tuple(l.key() for l in pc[0]))

    def leaves(self) -> set[InvariantLeaf]:
        return {l for p in self.terms for l in p}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        lines = []
        for prod, c in self.items():
            body = " · ".join(str(l) for l in prod) if prod else "1"
            lines.append(f"{c} * {body}")
        return "\n".join(lines)

    def as_json(self) -> list:
        return [{"coeff": str(c), "factors": [l.as_json() for l in prod]} for prod, c in self.items()]


# --- the restricted part of H*(Y) ------------------------------------------

class TokenSystem:
    """Classes ``c_1..c_k`` in ``H*(X)`` whose restrictions span the image in ``H*(Y)``.

    The restricted pairing is ``(a, b) -> integrate(Y a b)``; ``c^h`` is dual
    to ``c_h`` for it.  ``c_1`` has codimension ``dim X - 1`` (a point of Y)
    and ``c^1 = 1``.  Tokens ``h > k`` stand for a basis of the orthogonal
    complement and are never evaluated.
    """

    def __init__(self, geom: Geometry, ring: ChowRing, l: int | None = None):
        self.geom = geom
        self.ring = ring
        Y = ring.divisor(geom.Y)
        self.Y = Y
        n = geom.dim
        lower: list[ChowElement] = []
        for d in range(n - 1, -1, -1):
            partners = [ring.monomial(m) for m in ring.basis_by_degree[n - 1 - d]]
            rows: list[list[Fraction]] = []
            for mono in ring.basis_by_degree[d]:
                c = ring.monomial(mono)
                row = [ring.integrate(Y * c * p) for p in partners]
                if linalg.rank(rows + [row]) > len(rows):
                    rows.append(row)
                    lower.append(c)
        first = ring.integrate(Y * lower[0])
        lower[0] = lower[0] * (1 / first)
        G = [[ring.integrate(Y * a * b) for b in lower] for a in lower]
        Ginv = linalg.inverse(G)
        upper = []
        for b in range(len(lower)):
            acc = ring.zero()
            for j, c in enumerate(lower):
                if Ginv[j][b]:
                    acc = acc + c * Ginv[j][b]
            upper.append(acc)
        assert Y * (upper[0] - ring.one()) == ring.zero()
        upper[0] = ring.one()
        self.lower = lower
        self.upper = upper
        self.k = len(lower)
        self.l = self.k + 1 if l is None else l
        if self.l < self.k:
            raise InvalidInput(f"token arity l={self.l} is below the restricted rank k={self.k}")

    def restricted(self, t: Token) -> bool:
        return t.index <= self.k

    def lift(self, t: Token) -> ChowElement:
        """A class of X restricting to the token (restricted tokens only)."""
        if not self.restricted(t):
            raise ValueError("unrestricted tokens have no lift")
        base = self.upper[t.index - 1] if t.upper else self.lower[t.index - 1]
        return base * (self.Y ** t.ypow)

    def codim(self, t: Token) -> int:
        return self.lift(t).degree()


# --- comb profiles ---------------------------------------------------------

@dataclass(frozen=True)
class CombProfile:
    """Marking split ``A``, class split ``B`` and contact orders ``M``; teeth are ordered."""

    A: tuple[frozenset[int], ...]
    B: tuple[CurveClass, ...]
    M: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.M)

    @property
    def weight(self) -> Fraction:
        return Fraction(math.prod(self.M), math.factorial(self.r))


def _profile_ok(geom: Geometry, alpha: Sequence[int], A, B, M) -> bool:
    """The defining constraints on a comb profile (``alpha`` already lowered at k)."""
    r = len(M)
    if geom.y_dot(B[0]) + sum(M) != sum(alpha[i] for i in A[0]):
        return False
    if len(A[0]) + r < 2 or (B[0].is_zero() and len(A[0]) + r < 3):
        return False
    for i in range(1, r + 1):
        if not A[i] or B[i].is_zero() or M[i - 1] < 1:
            return False
        if sum(alpha[j] for j in A[i]) + M[i - 1] > geom.y_dot(B[i]):
            return False
    return True


def comb_profiles(geom: Geometry, beta: CurveClass, alpha: Sequence[int], k: int) -> list[CombProfile]:
    """Ordered comb profiles for lowering tangency at marking ``k``.

    ``alpha`` is the tangency vector before lowering.
    """
    lowered = list(alpha)
    lowered[k] -= 1
    others = [i for i in range(len(alpha)) if i != k]
    effective = enumerate_effective(geom, geom.degree(beta)) if geom.degree(beta) > 0 else []
    out = []
    for beta0 in [geom.zero_class()] + effective:
        rest = beta - beta0
        if not is_effective(geom, rest):
            continue
        for r in range(0, len(others) + 1):
            if r == 0 and not rest.is_zero():
                continue
            for assignment in itertools.product(range(r + 1), repeat=len(others)):
                teeth = [frozenset(i for i, a in zip(others, assignment) if a == t) for t in range(1, r + 1)]
                if any(not t for t in teeth):
                    continue
                A0 = frozenset([k] + [i for i, a in zip(others, assignment) if a == 0])
                budget = sum(lowered[i] for i in A0) - geom.y_dot(beta0)
                if budget < r:
                    continue
                for B in _class_compositions(geom, rest, r, effective):
                    for M in _bounded_compositions(budget, [geom.y_dot(b) - sum(lowered[j] for j in t)
                                                            for b, t in zip(B, teeth)]):
                        A = (A0,) + tuple(teeth)
                        Bfull = (beta0,) + B
                        if _profile_ok(geom, lowered, A, Bfull, M):
                            out.append(CombProfile(A, Bfull, M))
    return out


def _class_compositions(geom: Geometry, total: CurveClass, r: int,
                        effective: list[CurveClass]) -> Iterator[tuple[CurveClass, ...]]:
    if r == 0:
        if total.is_zero():
            yield ()
        return
    for b in effective:
        rest = total - b
        if geom.degree(rest) < 0 or not is_effective(geom, rest):
            continue
        for tail in _class_compositions(geom, rest, r - 1, effective):
            yield (b,) + tail


def _bounded_compositions(total: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Tuples of positive integers ``m_i <= bounds[i]`` summing to ``total``."""
    if not bounds:
        if total == 0:
            yield ()
        return
    for m in range(1, min(bounds[0], total) + 1):
        for tail in _bounded_compositions(total - m, bounds[1:]):
            yield (m,) + tail


def brute_force_profiles(geom: Geometry, beta: CurveClass, alpha: Sequence[int], k: int) -> set:
    """Exhaustive search over all splittings, for cross-checking ``comb_profiles``."""
    lowered = list(alpha)
    lowered[k] -= 1
    n = len(alpha)
    others = [i for i in range(n) if i != k]
    pool = [geom.zero_class()] + enumerate_effective(geom, max(geom.degree(beta), 0))
    d = geom.y_dot(beta)
    found = set()
    for r in range(0, n):
        for assignment in itertools.product(range(r + 1), repeat=len(others)):
            A = tuple(frozenset(([k] if t == 0 else []) + [i for i, a in zip(others, assignment) if a == t])
                      for t in range(r + 1))
            if not all(A[1:]):
                continue
            for teeth_classes in itertools.product(pool, repeat=r):
                beta0 = beta
                for b in teeth_classes:
                    beta0 = beta0 - b
                if beta0 not in pool:
                    continue
                for M in itertools.product(range(1, d + 1), repeat=r):
                    B = (beta0,) + teeth_classes
                    if _profile_ok(geom, lowered, A, B, M):
                        found.add((A, B, M))
    return found


# --- the engine ------------------------------------------------------------

@dataclass
class TraceStep:
    leaf: InvariantLeaf
    k: int
    measure: tuple[int, int, int]
    children: list[tuple[int, int, int]]
    n_terms: int

    def decreasing(self) -> bool:
        return all(c < self.measure for c in self.children)

    def as_json(self) -> dict:
        return {"leaf": str(self.leaf), "k": self.k, "measure": list(self.measure),
                "children": sorted({tuple(c) for c in self.children}), "terms": self.n_terms}


@dataclass(frozen=True)
class Unevaluable:
    leaf: InvariantLeaf
    reason: str

    def __str__(self) -> str:
        return f"Unevaluable: {self.leaf} ({self.reason})"


class RecursionEngine:
    """Expansion, reduction and evaluation for one geometry.

    ``tie_break`` picks the marking to lower: ``"smallest"`` or ``"largest"``
    index among markings with positive tangency.
    """

    def __init__(self, geom: Geometry, l: int | None = None, tie_break: str = "smallest"):
        if not geom.very_ample_Y:
            raise UnsupportedRegime("the recursion needs Y positive on every curve class")
        if tie_break not in ("smallest", "largest"):
            raise InvalidInput("tie_break must be 'smallest' or 'largest'")
        self.geom = geom
        self.ring = build_ring(geom)
        self.tokens = TokenSystem(geom, self.ring, l)
        self.tie_break = tie_break
        self.trace: list[TraceStep] = []
        self._memo: dict[InvariantLeaf, Expression] = {}
        self._values: dict[InvariantLeaf, Fraction | Unevaluable] = {}

    # construction helpers

    def rel(self, beta: CurveClass, markings: Iterable[Marking]) -> InvariantLeaf:
        leaf = InvariantLeaf(Kind.REL, beta, markings)
        if sum(leaf.alpha) > self.geom.y_dot(beta):
            raise InvalidInput("total tangency exceeds Y.beta")
        if leaf.n < 2:
            raise InvalidInput("at least two markings are required")
        return leaf

    def point_leaf(self, beta: CurveClass) -> InvariantLeaf:
        """``<rho_1 |Y.beta, 1>``, the relative point invariant."""
        return self.rel(beta, [Marking(Token(1, False), 0, self.geom.y_dot(beta)),
                               Marking(self.ring.one())])

    # one rewriting step

    def _times_y(self, ins: Insertion, new_tangency: int) -> Insertion | None:
        if isinstance(ins, Token):
            if new_tangency == 0 and not self.tokens.restricted(ins):
                # the push-forward of a class orthogonal to every restriction is zero
                return None
            return Token(ins.index, ins.upper, ins.ypow + 1)
        out = ins * self.tokens.Y
        return None if out.is_zero() else out

    def expand_step(self, leaf: InvariantLeaf, k: int) -> Expression:
        if leaf.kind is not Kind.REL:
            raise InvalidInput("only relative invariants are expanded")
        alpha = leaf.alpha
        if not 0 <= k < leaf.n:
            raise InvalidInput(f"marking {k} out of range")
        if alpha[k] < 1:
            raise NoTangency(f"marking {k} has no tangency")
        marks = list(leaf.markings)
        mk = marks[k]
        out = Expression()
        if alpha[k] > 1:
            raised = Marking(mk.insertion, mk.psi + 1, alpha[k] - 1)
            out._add([self._normalize(InvariantLeaf(Kind.REL, leaf.beta, marks[:k] + [raised] + marks[k + 1:]))],
                     alpha[k] - 1)
        ins = self._times_y(mk.insertion, alpha[k] - 1)
        if ins is not None:
            new = Marking(ins, mk.psi, alpha[k] - 1)
            out._add([self._normalize(InvariantLeaf(Kind.REL, leaf.beta, marks[:k] + [new] + marks[k + 1:]))], 1)
        for prof in comb_profiles(self.geom, leaf.beta, alpha, k):
            lowered = [Marking(m.insertion, m.psi, m.tangency - (i == k)) for i, m in enumerate(marks)]
            for hs in itertools.product(range(1, self.tokens.l + 1), repeat=prof.r):
                internal = [Marking(lowered[i].insertion, lowered[i].psi, 0) for i in sorted(prof.A[0])]
                internal += [Marking(Token(h, True)) for h in hs]
                factors = [InvariantLeaf(Kind.ABS_Y, prof.B[0], internal)]
                for t in range(prof.r):
                    tooth = [lowered[i] for i in sorted(prof.A[t + 1])]
                    tooth.append(Marking(Token(hs[t], False), 0, prof.M[t]))
                    factors.append(self._normalize(InvariantLeaf(Kind.REL, prof.B[t + 1], tooth)))
                out._add(factors, -prof.weight)
        return out

    def _normalize(self, leaf: InvariantLeaf) -> InvariantLeaf:
        if leaf.kind is Kind.REL and sum(leaf.alpha) == 0:
            return InvariantLeaf(Kind.ABS_X, leaf.beta, leaf.markings)
        return leaf

    def choose_marking(self, leaf: InvariantLeaf) -> int:
        positive = [i for i, a in enumerate(leaf.alpha) if a > 0]
        return positive[0] if self.tie_break == "smallest" else positive[-1]

    def reduce(self, leaf: InvariantLeaf) -> Expression:
        """Rewrite ``leaf`` into absolute invariants, recording every step."""
        leaf = self._normalize(leaf)
        if leaf.kind is not Kind.REL:
            return Expression.leaf(leaf)
        if leaf in self._memo:
            return self._memo[leaf]
        k = self.choose_marking(leaf)
        step = self.expand_step(leaf, k)
        m0 = leaf.measure(self.geom)
        children = [l.measure(self.geom) for l in step.leaves()]
        record = TraceStep(leaf, k, m0, children, len(step))
        self.trace.append(record)
        if not record.decreasing():
            raise MeasureViolation(f"step on {leaf} does not decrease the measure {m0}")
        out = Expression()
        for prod, c in step.terms.items():
            acc = Expression.scalar(c)
            for factor in prod:
                acc = acc * self.reduce(factor)
            out = out + acc
        self._memo[leaf] = out
        return out

    # vanishing and evaluation

    def unrestricted_count(self, leaf: InvariantLeaf) -> int:
        return sum(1 for t in leaf.tokens() if not self.tokens.restricted(t))

    def restricted_filter(self, expr: Expression) -> Expression:
        return Expression({p: c for p, c in expr.terms.items()
                           if not any(self.unrestricted_count(l) == 1 for l in p)})

    def _lift(self, ins: Insertion) -> ChowElement:
        return self.tokens.lift(ins) if isinstance(ins, Token) else ins

    def vdim(self, leaf: InvariantLeaf) -> int:
        g = self.geom
        if leaf.kind is Kind.ABS_Y:
            return g.dim - 1 - g.ky_dot(leaf.beta) + leaf.n - 3
        return g.dim - g.kx_dot(leaf.beta) + leaf.n - 3 - sum(leaf.alpha)

    def evaluate_leaf(self, leaf: InvariantLeaf) -> Fraction | Unevaluable:
        if leaf not in self._values:
            self._values[leaf] = self._evaluate_leaf(leaf)
        return self._values[leaf]

    def _evaluate_leaf(self, leaf: InvariantLeaf) -> Fraction | Unevaluable:
        from .lefschetz import _s_function, lefschetz_series, relative_ladder
        from .series import extract_invariants

        g = self.geom
        if self.unrestricted_count(leaf) == 1:
            return Fraction(0)
        if self.unrestricted_count(leaf) > 1:
            return Unevaluable(leaf, "several insertions outside the restricted classes")
        if leaf.kind is Kind.REL and sum(leaf.alpha) > g.y_dot(leaf.beta):
            return Fraction(0)
        lifts = [self._lift(m.insertion) for m in leaf.markings]
        # a class restricted to Y vanishes exactly when its product with Y does
        on_y = [leaf.kind is Kind.ABS_Y or m.tangency > 0 for m in leaf.markings]
        if any((self.tokens.Y * c if y else c).is_zero() for c, y in zip(lifts, on_y)):
            return Fraction(0)
        if all(c.is_homogeneous() for c in lifts):
            codim = sum(c.degree() + m.psi for c, m in zip(lifts, leaf.markings))
            if codim != self.vdim(leaf):
                return Fraction(0)
        else:
            return Unevaluable(leaf, "inhomogeneous insertion")
        if leaf.beta.is_zero():
            if leaf.n < 3:
                return Unevaluable(leaf, "unstable degree-zero invariant")
            integrand = self.ring.one()
            for c in lifts:
                integrand = integrand * c
            if leaf.kind is Kind.ABS_Y:
                integrand = integrand * self.tokens.Y
            psis = [m.psi for m in leaf.markings]
            multinomial = Fraction(math.factorial(leaf.n - 3), math.prod(math.factorial(a) for a in psis))
            return multinomial * self.ring.integrate(integrand)
        if leaf.n == 2:
            one = self.ring.one()
            for unit in (1, 0):
                m_unit, m_other = leaf.markings[unit], leaf.markings[1 - unit]
                if lifts[unit] == one and m_unit.psi == 0 and m_unit.tangency == 0:
                    gamma, a = lifts[1 - unit], m_other.psi
                    if leaf.kind is Kind.ABS_X:
                        series = _s_function(g, leaf.beta)
                    elif leaf.kind is Kind.REL:
                        if not g.is_semipositive():
                            return Unevaluable(leaf, "relative ladder needs a semipositive pair")
                        series = relative_ladder(g, leaf.beta, m_other.tangency)[-1]
                    else:
                        if not g.is_semipositive():
                            return Unevaluable(leaf, "invariants of Y need a semipositive pair")
                        series = lefschetz_series(g, g.degree(leaf.beta))[leaf.beta]
                        if series == 0:
                            return Fraction(0)
                    return extract_invariants(series, [gamma]).get((0, a), Fraction(0))
        return Unevaluable(leaf, "no closed form for this invariant")

    def partial_evaluate(self, expr: Expression) -> Expression:
        """Substitute every evaluable leaf; what remains is a polynomial in unevaluable leaves."""
        out = Expression()
        for prod, c in expr.items():
            values = [self.evaluate_leaf(l) for l in prod]
            if any(v == 0 for v in values if not isinstance(v, Unevaluable)):
                continue
            coeff = c * math.prod(v for v in values if not isinstance(v, Unevaluable))
            out._add([l for l, v in zip(prod, values) if isinstance(v, Unevaluable)], coeff)
        return out

    def evaluate(self, expr: Expression) -> Fraction | Unevaluable:
        total = Fraction(0)
        for prod, c in expr.items():
            values = [self.evaluate_leaf(l) for l in prod]
            if any(v == 0 for v in values if not isinstance(v, Unevaluable)):
                continue
            bad = [v for v in values if isinstance(v, Unevaluable)]
            if bad:
                return bad[0]
            total += c * math.prod(values)
        return total


# module-level conveniences mirroring the engine methods

def expand_step(geom: Geometry, leaf: InvariantLeaf, k: int, l: int | None = None) -> Expression:
    return RecursionEngine(geom, l).expand_step(leaf, k)


def reduce(geom: Geometry, leaf: InvariantLeaf, l: int | None = None,
           tie_break: str = "smallest") -> tuple[Expression, list[TraceStep]]:
    engine = RecursionEngine(geom, l, tie_break)
    return engine.reduce(leaf), engine.trace
