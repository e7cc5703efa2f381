"""Smooth complete toric varieties: fans, divisor and curve classes.

Curve classes are stored as the full vector of intersection numbers
``(D_rho . beta)`` over the rays, which is what the Givental residue formula
consumes directly.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .errors import (CapTooSmall, DanglingWall, InvalidFan, InvalidGeometry, NonPrimitiveRay,
                     NonSmoothCone, NotFano, NotSemipositive)


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __init__(self, dim: int, rays: Iterable[Sequence[int]], max_cones: Iterable[Iterable[int]]):
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "rays", tuple(tuple(int(c) for c in r) for r in rays))
        object.__setattr__(self, "max_cones", tuple(sorted(tuple(sorted(int(i) for i in c)) for c in max_cones)))

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def picard_rank(self) -> int:
        return self.n_rays - self.dim

    def cone_matrix(self, cone: Sequence[int]) -> list[list[int]]:
        """Matrix whose columns are the rays of ``cone``."""
        return [[self.rays[i][r] for i in cone] for r in range(self.dim)]

    def facets(self) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
        """Map each (dim-1)-face to the maximal cones containing it."""
        walls: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for cone in self.max_cones:
            for face in itertools.combinations(cone, self.dim - 1):
                walls.setdefault(face, []).append(cone)
        return walls

    def is_face(self, rays: Iterable[int]) -> bool:
        s = set(rays)
        return any(s <= set(c) for c in self.max_cones)


@dataclass(frozen=True)
class FanReport:
    dim: int
    n_rays: int
    n_max_cones: int
    picard_rank: int
    n_walls: int

    def as_dict(self) -> dict:
        return {"dim": self.dim, "n_rays": self.n_rays, "n_max_cones": self.n_max_cones,
                "picard_rank": self.picard_rank, "n_walls": self.n_walls, "smooth": True}


def validate_fan(fan: Fan) -> FanReport:
    """Check smoothness, primitivity and the wall condition; raise on failure."""
    if fan.dim < 1:
        raise InvalidFan("dimension must be positive")
    if not fan.rays:
        raise InvalidFan("fan has no rays")
    for i, ray in enumerate(fan.rays):
        if len(ray) != fan.dim:
            raise InvalidFan(f"ray {i} has length {len(ray)}, expected {fan.dim}")
        if math.gcd(*ray) != 1:
            raise NonPrimitiveRay(f"ray {i} = {ray} is not primitive")
    if len(set(fan.rays)) != len(fan.rays):
        raise InvalidFan("repeated ray")
    if not fan.max_cones:
        raise InvalidFan("fan has no maximal cones")
    for cone in fan.max_cones:
        if any(i < 0 or i >= fan.n_rays for i in cone):
            raise InvalidFan(f"cone {cone} references a missing ray")
        if len(set(cone)) != fan.dim:
            raise InvalidFan(f"cone {cone} does not have exactly {fan.dim} rays")
        d = linalg.det(fan.cone_matrix(cone))
        if abs(d) != 1:
            raise NonSmoothCone(f"cone {cone} has determinant {d}")
    walls = fan.facets()
    for face, cones in walls.items():
        if len(cones) != 2:
            raise DanglingWall(f"facet {face} lies in {len(cones)} maximal cones")
    used = set(itertools.chain.from_iterable(fan.max_cones))
    if used != set(range(fan.n_rays)):
        raise InvalidFan("some ray lies in no maximal cone")
    return FanReport(fan.dim, fan.n_rays, len(fan.max_cones), fan.picard_rank, len(walls))


@dataclass(frozen=True, order=True)
class CurveClass:
    """Curve class recorded by its intersection numbers with the toric divisors."""

    pairings: tuple[int, ...]

    def __init__(self, pairings: Iterable[int]):
        object.__setattr__(self, "pairings", tuple(int(p) for p in pairings))

    @classmethod
    def zero(cls, n_rays: int) -> CurveClass:
        return cls((0,) * n_rays)

    def is_zero(self) -> bool:
        return not any(self.pairings)

    def __add__(self, other: CurveClass) -> CurveClass:
        return CurveClass(a + b for a, b in zip(self.pairings, other.pairings))

    def __sub__(self, other: CurveClass) -> CurveClass:
        return CurveClass(a - b for a, b in zip(self.pairings, other.pairings))

    def __rmul__(self, k: int) -> CurveClass:
        return CurveClass(k * a for a in self.pairings)

    def dot(self, coeffs: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(coeffs, self.pairings))

    def in_kernel(self, fan: Fan) -> bool:
        return all(sum(b * ray[r] for b, ray in zip(self.pairings, fan.rays)) == 0
                   for r in range(fan.dim))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.pairings)) + ")"


@dataclass(frozen=True, eq=False)
class DivisorClass:
    """``sum_rho a_rho D_rho`` modulo linear equivalence.

    Equality compares normal forms: the relation lattice is projected out
    using the unimodular basis of the first maximal cone, which zeroes the
    coordinates on that cone's rays.
    """

    fan: Fan
    coeffs: tuple[int, ...]

    def __init__(self, fan: Fan, coeffs: Iterable[int]):
        object.__setattr__(self, "fan", fan)
        coeffs = tuple(int(a) for a in coeffs)
        if len(coeffs) != fan.n_rays:
            raise InvalidGeometry(f"divisor needs {fan.n_rays} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @cached_property
    def normal_form(self) -> tuple[int, ...]:
        fan = self.fan
        sigma = fan.max_cones[0]
        rows = [list(fan.rays[i]) for i in sigma]
        m = linalg.solve(rows, [self.coeffs[i] for i in sigma])
        out = []
        for a, ray in zip(self.coeffs, fan.rays):
            v = a - sum(mi * r for mi, r in zip(m, ray))
            assert v.denominator == 1
            out.append(int(v))
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.fan == other.fan and self.normal_form == other.normal_form

    def __hash__(self) -> int:
        return hash((self.fan, self.normal_form))

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(self.fan, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.fan, (-a for a in self.coeffs))

    def __rmul__(self, k: int) -> DivisorClass:
        return DivisorClass(self.fan, (k * a for a in self.coeffs))

    def dot(self, beta: CurveClass) -> int:
        return beta.dot(self.coeffs)

    @classmethod
    def relation(cls, fan: Fan, m: Sequence[int]) -> DivisorClass:
        """The principal divisor of the character ``m``."""
        return cls(fan, (sum(a * b for a, b in zip(m, ray)) for ray in fan.rays))

    @classmethod
    def anticanonical(cls, fan: Fan) -> DivisorClass:
        return cls(fan, (1,) * fan.n_rays)


def wall_curve_classes(fan: Fan) -> list[CurveClass]:
    """Classes of the torus-invariant curves, one per wall, deduplicated."""
    validate_fan(fan)
    found = set()
    for face, (s1, s2) in fan.facets().items():
        (u,) = set(s1) - set(face)
        (u2,) = set(s2) - set(face)
        basis = list(face) + [u]
        coeffs = linalg.solve(fan.cone_matrix(basis), list(fan.rays[u2]))
        if coeffs[-1] != -1:
            raise InvalidFan(f"wall {face} does not satisfy the smooth wall relation")
        pairings = [0] * fan.n_rays
        pairings[u] = pairings[u2] = 1
        for rho, b in zip(face, coeffs):
            assert b.denominator == 1
            pairings[rho] = -int(b)
        found.add(CurveClass(pairings))
    return sorted(found)


@dataclass(frozen=True, eq=False)
class Geometry:
    """A smooth projective toric ``X`` together with a hypersurface class ``Y``.

    ``ample`` measures degree for truncation of Novikov series.  The two
    flags are user assertions that cannot be verified from toric data.
    """

    fan: Fan
    Y: DivisorClass
    ample: DivisorClass
    very_ample_Y: bool = True
    contains_all_curve_classes: bool = True
    name: str = field(default="custom")

    def __post_init__(self):
        validate_fan(self.fan)
        if self.Y.fan != self.fan or self.ample.fan != self.fan:
            raise InvalidGeometry("divisor classes belong to a different fan")
        for w in self.walls:
            if self.ample.dot(w) <= 0:
                raise InvalidGeometry(f"ample class is not positive on wall class {w}")
            if self.Y.dot(w) < 0:
                raise InvalidGeometry(f"Y is negative on wall class {w}")
            if self.very_ample_Y and self.Y.dot(w) <= 0:
                raise InvalidGeometry(f"Y asserted very ample but Y.{w} = 0")
        if self.contains_all_curve_classes and self.fan.dim <= 2 and not self.is_projective_plane():
            raise InvalidGeometry("every curve class comes from Y only for dim >= 3 or X = P^2")

    @cached_property
    def walls(self) -> list[CurveClass]:
        return wall_curve_classes(self.fan)

    @property
    def dim(self) -> int:
        return self.fan.dim

    @property
    def n_rays(self) -> int:
        return self.fan.n_rays

    def is_projective_plane(self) -> bool:
        # P^2 is the only smooth complete toric surface of Picard rank one
        return self.fan.dim == 2 and self.fan.picard_rank == 1

    def zero_class(self) -> CurveClass:
        return CurveClass.zero(self.n_rays)

    def degree(self, beta: CurveClass) -> int:
        return self.ample.dot(beta)

    def y_dot(self, beta: CurveClass) -> int:
        return self.Y.dot(beta)

    def kx_dot(self, beta: CurveClass) -> int:
        return -sum(beta.pairings)

    def ky_dot(self, beta: CurveClass) -> int:
        return self.kx_dot(beta) + self.y_dot(beta)

    def is_fano(self) -> bool:
        return all(self.kx_dot(w) < 0 for w in self.walls)

    def require_fano(self) -> None:
        bad = [w for w in self.walls if self.kx_dot(w) >= 0]
        if bad:
            raise NotFano(f"-K_X is not positive on wall class {bad[0]}")

    def semipositivity_problems(self) -> list[str]:
        problems = []
        if not self.very_ample_Y:
            problems.append("Y is not asserted very ample")
        if not self.contains_all_curve_classes:
            problems.append("Y is not asserted to contain all curve classes")
        for w in self.walls:
            if self.ky_dot(w) > 0:
                problems.append(f"-K_Y is negative on wall class {w}")
        return problems

    def is_semipositive(self) -> bool:
        return not self.semipositivity_problems()

    def require_semipositive(self) -> None:
        problems = self.semipositivity_problems()
        if problems:
            raise NotSemipositive("; ".join(problems))
        self.require_fano()

    def class_from_degree(self, d: int) -> CurveClass:
        """``d`` times the generator, for Picard rank one."""
        if len(self.walls) != 1:
            raise InvalidGeometry("a bare degree only names a class when there is one wall class")
        return d * self.walls[0]


def enumerate_effective(geom: Geometry, cap: int) -> list[CurveClass]:
    """Non-zero effective classes of degree at most ``cap``, sorted by (degree, pairings)."""
    walls = geom.walls
    seen = {geom.zero_class()}
    frontier = [geom.zero_class()]
    while frontier:
        nxt = []
        for beta in frontier:
            for w in walls:
                gamma = beta + w
                if geom.degree(gamma) <= cap and gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    seen.discard(geom.zero_class())
    if not seen and cap >= 1:
        warnings.warn(f"cap {cap} is below the degree of every wall class", CapTooSmall)
    return sorted(seen, key=lambda b: (geom.degree(b), b.pairings))


def is_effective(geom: Geometry, beta: CurveClass) -> bool:
    """Membership in the semigroup generated by wall classes (zero included)."""
    if beta.is_zero():
        return True
    d = geom.degree(beta)
    if d <= 0:
        return False
    return beta in _effective_set(geom, d)


def _effective_set(geom: Geometry, cap: int) -> frozenset[CurveClass]:
    cache = geom.__dict__.setdefault("_effective_cache", {})
    if cap not in cache:
        cache[cap] = frozenset(enumerate_effective(geom, cap))
    return cache[cap]


def canonical_pairings(geom: Geometry, beta: CurveClass) -> tuple[int, int]:
    """``(K_X . beta, K_Y . beta)``, the latter by adjunction."""
    return geom.kx_dot(beta), geom.ky_dot(beta)


# --- fan constructors -----------------------------------------------------

def projective_space(n: int) -> Fan:
    if not 1 <= n <= 6:
        raise InvalidFan("built-in projective spaces cover 1 <= n <= 6")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    return Fan(n, rays, itertools.combinations(range(n + 1), n))


def product(f1: Fan, f2: Fan) -> Fan:
    rays = [r + (0,) * f2.dim for r in f1.rays] + [(0,) * f1.dim + r for r in f2.rays]
    off = f1.n_rays
    cones = [c1 + tuple(off + i for i in c2) for c1 in f1.max_cones for c2 in f2.max_cones]
    return Fan(f1.dim + f2.dim, rays, cones)


def hirzebruch(a: int) -> Fan:
    if a < 0:
        raise InvalidFan("Hirzebruch index must be non-negative")
    return Fan(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])
