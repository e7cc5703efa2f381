import itertools

import pytest
from hypothesis import given, settings, strategies as st

from toricqm import geometries
from toricqm.errors import DanglingWall, InvalidGeometry, NonPrimitiveRay, NonSmoothCone, NotFano
from toricqm.toric import (CurveClass, DivisorClass, Fan, Geometry, canonical_pairings,
                           enumerate_effective, hirzebruch, product, projective_space,
                           validate_fan, wall_curve_classes)

P2 = Fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)])
P1P1 = Fan(2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [(0, 2), (0, 3), (1, 2), (1, 3)])


def test_p2_is_valid_with_picard_rank_one():
    report = validate_fan(P2)
    assert report.picard_rank == 1
    assert report.as_dict()["smooth"]


def test_p1xp1_is_valid_with_picard_rank_two():
    assert validate_fan(P1P1).picard_rank == 2


def test_non_smooth_cone():
    fan = Fan(2, [(1, 0), (1, 2), (-1, -1)], [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(NonSmoothCone):
        validate_fan(fan)


def test_non_primitive_ray():
    with pytest.raises(NonPrimitiveRay):
        validate_fan(Fan(2, [(2, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)]))


def test_incomplete_fan_has_dangling_wall():
    with pytest.raises(DanglingWall):
        validate_fan(Fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2)]))


def test_wall_classes():
    assert wall_curve_classes(P2) == [CurveClass((1, 1, 1))]
    assert sorted(wall_curve_classes(P1P1)) == [CurveClass((0, 0, 1, 1)), CurveClass((1, 1, 0, 0))]
    assert wall_curve_classes(projective_space(3)) == [CurveClass((1, 1, 1, 1))]


def test_hirzebruch_walls_include_negative_curve():
    walls = wall_curve_classes(hirzebruch(1))
    assert any(min(w.pairings) < 0 for w in walls)
    for w in walls:
        assert w.in_kernel(hirzebruch(1))


@pytest.mark.parametrize("fan", [P2, P1P1, projective_space(4), hirzebruch(2),
                                 product(projective_space(1), projective_space(2))])
def test_wall_relations_hold_exactly(fan):
    for w in wall_curve_classes(fan):
        for axis in range(fan.dim):
            assert sum(p * ray[axis] for p, ray in zip(w.pairings, fan.rays)) == 0


def test_enumerate_effective_p2():
    geom = geometries.builtin("p2-line")
    classes = enumerate_effective(geom, 3)
    assert [geom.degree(b) for b in classes] == [1, 2, 3]


def test_enumerate_effective_p1xp1_bidegrees():
    geom = geometries.builtin("p1xp1-diagonal")
    bidegrees = {(b.pairings[2], b.pairings[0]) for b in enumerate_effective(geom, 2)}
    assert bidegrees == {(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}


@pytest.mark.parametrize("name", geometries.names())
def test_cap_zero_gives_nothing(name):
    assert enumerate_effective(geometries.builtin(name), 0) == []


def test_enumeration_is_sorted_and_effective_classes_are_in_kernel():
    geom = geometries.builtin("p2xp2-cy")
    classes = enumerate_effective(geom, 3)
    keys = [(geom.degree(b), b.pairings) for b in classes]
    assert keys == sorted(keys)
    assert all(b.in_kernel(geom.fan) for b in classes)


def test_canonical_pairings():
    quintic = geometries.builtin("quintic")
    for d in (1, 2, 3):
        assert canonical_pairings(quintic, quintic.class_from_degree(d)) == (-5 * d, 0)
    cubic = geometries.builtin("p3-cubic")
    assert canonical_pairings(cubic, cubic.class_from_degree(1)) == (-4, -1)
    line = geometries.builtin("p2-line")
    assert canonical_pairings(line, line.class_from_degree(1))[1] == -2


def test_divisor_class_normal_form_identifies_linear_equivalence():
    fan = projective_space(2)
    assert DivisorClass(fan, (1, 0, 0)) == DivisorClass(fan, (0, 0, 1))
    assert DivisorClass(fan, (1, 0, 0)) != DivisorClass(fan, (2, 0, 0))
    assert DivisorClass.anticanonical(fan) == DivisorClass(fan, (3, 0, 0))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_adding_principal_divisors_preserves_the_class(coeffs, m):
    fan = hirzebruch(1)
    D = DivisorClass(fan, coeffs)
    assert D + DivisorClass.relation(fan, m) == D
    for w in wall_curve_classes(fan):
        assert (D + DivisorClass.relation(fan, m)).dot(w) == D.dot(w)


def test_geometry_rejects_nonpositive_ample():
    fan = projective_space(2)
    with pytest.raises(InvalidGeometry):
        Geometry(fan, DivisorClass(fan, (1, 0, 0)), DivisorClass(fan, (0, 0, 0)))


def test_geometry_rejects_surfaces_other_than_p2_without_opt_out():
    fan = product(projective_space(1), projective_space(1))
    with pytest.raises(InvalidGeometry):
        Geometry(fan, DivisorClass(fan, (1, 0, 1, 0)), DivisorClass(fan, (1, 0, 1, 0)))


def test_non_fano_hirzebruch_is_reported():
    fan = hirzebruch(2)
    walls = wall_curve_classes(fan)
    ample = next(D for D in (DivisorClass(fan, c) for c in itertools.product(range(4), repeat=4))
                 if all(D.dot(w) > 0 for w in walls))
    geom = Geometry(fan, ample, ample, very_ample_Y=True, contains_all_curve_classes=False)
    assert not geom.is_fano()
    with pytest.raises(NotFano):
        geom.require_fano()
