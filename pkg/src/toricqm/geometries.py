"""Named built-in geometries ``(X, Y, ample)``."""

from __future__ import annotations

from functools import lru_cache

from .errors import InvalidInput
from .toric import DivisorClass, Fan, Geometry, hirzebruch, product, projective_space

# name -> (fan factory, Y on the listed rays, ample on the listed rays, flags, description)
_SPECS = {
    "p2-line": (lambda: projective_space(2), {0: 1}, {0: 1}, (True, True), "line in P^2"),
    "p2-conic": (lambda: projective_space(2), {0: 2}, {0: 1}, (True, True), "conic in P^2"),
    "p2-cubic": (lambda: projective_space(2), {0: 3}, {0: 1}, (True, True), "plane cubic"),
    "p3-plane": (lambda: projective_space(3), {0: 1}, {0: 1}, (True, True), "plane in P^3"),
    "p3-quadric": (lambda: projective_space(3), {0: 2}, {0: 1}, (True, True), "quadric surface"),
    "p3-cubic": (lambda: projective_space(3), {0: 3}, {0: 1}, (True, True), "cubic surface"),
    "p3-quartic": (lambda: projective_space(3), {0: 4}, {0: 1}, (True, True), "quartic K3 surface"),
    "p4-cubic": (lambda: projective_space(4), {0: 3}, {0: 1}, (True, True), "cubic threefold"),
    "quintic": (lambda: projective_space(4), {0: 5}, {0: 1}, (True, True), "quintic threefold"),
    "p5-sextic": (lambda: projective_space(5), {0: 6}, {0: 1}, (True, True), "sextic fourfold"),
    "p1xp2-k3": (lambda: product(projective_space(1), projective_space(2)), {0: 2, 2: 3}, {0: 1, 2: 1},
                 (True, True), "K3 surface of bidegree (2,3)"),
    "p2xp2-cy": (lambda: product(projective_space(2), projective_space(2)), {0: 3, 3: 3}, {0: 1, 3: 1},
                 (True, True), "Calabi-Yau threefold of bidegree (3,3)"),
    "p1xp1-diagonal": (lambda: product(projective_space(1), projective_space(1)), {0: 1, 2: 1},
                       {0: 1, 2: 1}, (True, False), "(1,1) curve in P^1 x P^1"),
    "f1-anticanonical": (lambda: hirzebruch(1), {0: 1, 1: 1, 2: 1, 3: 1}, {0: 1, 1: 1, 2: 1, 3: 1},
                         (True, False), "anticanonical curve in F_1"),
}


def names() -> list[str]:
    return sorted(_SPECS)


def description(name: str) -> str:
    return _SPECS[name][4]


def _vector(fan: Fan, entries: dict[int, int]) -> tuple[int, ...]:
    return tuple(entries.get(i, 0) for i in range(fan.n_rays))


@lru_cache(maxsize=None)
def builtin(name: str) -> Geometry:
    if name not in _SPECS:
        raise InvalidInput(f"unknown geometry {name!r}; known: {', '.join(names())}")
    factory, y, ample, (very_ample, all_classes), _ = _SPECS[name]
    fan = factory()
    return Geometry(fan, DivisorClass(fan, _vector(fan, y)), DivisorClass(fan, _vector(fan, ample)),
                    very_ample_Y=very_ample, contains_all_curve_classes=all_classes, name=name)


def semipositive_names() -> list[str]:
    return [n for n in names() if builtin(n).is_semipositive()]
