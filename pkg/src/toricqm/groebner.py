"""Sparse multivariate polynomials over Q and Buchberger's algorithm.

Polynomials are dicts ``{exponent tuple: Fraction}``.  The monomial order is
graded reverse lexicographic with ``x_0 > x_1 > ...``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Monomial = tuple[int, ...]
Poly = dict[Monomial, Fraction]


def grevlex_key(m: Monomial) -> tuple:
    """Sort key: larger key means larger monomial."""
    return (sum(m), tuple(-e for e in reversed(m)))


def leading(p: Poly) -> Monomial:
    return max(p, key=grevlex_key)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def add_into(acc: Poly, p: Poly, scale: Fraction = Fraction(1), shift: Monomial | None = None) -> None:
    for m, c in p.items():
        if shift is not None:
            m = mono_mul(m, shift)
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def monic(p: Poly) -> Poly:
    lc = p[leading(p)]
    return {m: c / lc for m, c in p.items()}


def reduce(p: Poly, basis: list[Poly]) -> Poly:
    """Full reduction of ``p`` modulo ``basis`` (every term is reduced)."""
    p = dict(p)
    lead = [(leading(g), g) for g in basis]
    out: Poly = {}
    while p:
        m = leading(p)
        c = p[m]
        for lm, g in lead:
            if divides(lm, m):
                add_into(p, g, -c / g[lm], mono_div(m, lm))
                break
        else:
            out[m] = c
            del p[m]
    return out


def s_polynomial(f: Poly, g: Poly) -> Poly:
    lf, lg = leading(f), leading(g)
    l = mono_lcm(lf, lg)
    s: Poly = {}
    add_into(s, f, 1 / f[lf], mono_div(l, lf))
    add_into(s, g, -1 / g[lg], mono_div(l, lg))
    return s


def groebner_basis(generators: Iterable[Poly]) -> list[Poly]:
    """Reduced Groebner basis, monic, sorted by leading monomial (descending).

    Plain Buchberger with the product criterion and Buchberger's chain
    criterion for discarding S-pairs.
    """
    G = [monic(g) for g in generators if g]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        i, j = min(pairs, key=lambda ij: (grevlex_key(mono_lcm(leading(G[ij[0]]), leading(G[ij[1]]))), ij))
        pairs.discard((i, j))
        li, lj = leading(G[i]), leading(G[j])
        l = mono_lcm(li, lj)
        if mono_mul(li, lj) == l:
            continue
        if any(k not in (i, j) and divides(leading(G[k]), l)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue
        h = reduce(s_polynomial(G[i], G[j]), G)
        if h:
            G.append(monic(h))
            n = len(G) - 1
            pairs.update((k, n) for k in range(n))
    return _interreduce(G)


def _interreduce(G: list[Poly]) -> list[Poly]:
    # drop elements whose leading monomial is divisible by another's, then tail-reduce
    G = sorted(G, key=lambda g: grevlex_key(leading(g)))
    minimal: list[Poly] = []
    for g in G:
        lg = leading(g)
        if not any(divides(leading(h), lg) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        out.append(monic(reduce(g, others)))
    return sorted(out, key=lambda g: grevlex_key(leading(g)), reverse=True)
