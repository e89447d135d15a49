import pytest
from hypothesis import given, settings, strategies as st

from projpoly.cones import (
    check_face_cone_lattice, check_face_normal_cone, check_lift_polar, check_normal_cone_polar,
    check_sum_lattice, check_sum_polar, complementary, cone_polar, cone_sum, diamond_sum, lift,
)
from projpoly.fixtures import centered_cube, dodecagon, square
from projpoly.geometry import Cone, GeometryError, hull, polar

centered = [square(), dodecagon(), centered_cube(3), hull([(3, 0), (0, 2), (-1, -1)]),
            hull([(2, 0, 0), (0, 2, 0), (0, 0, 2), (-1, -1, -1)])]


def test_polar_of_orthant():
    Q = Cone([[1, 0], [0, 1]], [], 2)
    assert cone_polar(Q) == Cone([[-1, 0], [0, -1]], [], 2)


def test_polar_of_line_is_hyperplane():
    L = Cone([], [[1, 1]], 2)
    assert cone_polar(L) == Cone([], [[1, -1]], 2)


def test_polar_involution_on_cones():
    C = Cone([[1, 0, 1], [0, 1, 1], [-1, 0, 1]], [], 3)
    assert cone_polar(cone_polar(C)) == C


def test_sum_identities():
    C1 = Cone([[1, 0, 0, 1], [0, 1, 0, 1]], [], 4)
    C2 = Cone([[0, 0, 1, 0], [1, 1, 1, 3]], [], 4)
    assert complementary(C1, C2)
    assert check_sum_lattice(C1, C2)
    assert check_sum_polar(C1, C2)


def test_sum_needs_complementary_spans():
    C1 = Cone([[1, 0]], [], 2)
    with pytest.raises(GeometryError):
        diamond_sum(C1, C1)


def test_diamond_sum_negative_control():
    C1 = Cone([[1, 0, 0]], [], 3)
    C2 = Cone([[0, 1, 0], [0, 1, 1]], [], 3)
    D = diamond_sum(C1, C2)
    assert D == cone_polar(cone_sum(C1, C2))
    # the polar of a different sum differs
    assert D != cone_polar(cone_sum(C1, Cone([[0, 1, 0], [0, -1, 1]], [], 3)))


@pytest.mark.parametrize("k", range(len(centered)))
def test_face_and_normal_cone_identities(k):
    P = centered[k]
    L = P.lattice
    Ps = polar(P)
    for f in range(len(L)):
        if f == L.bottom:
            continue
        assert check_normal_cone_polar(P, f, Ps)
        if f != L.top:
            assert check_face_cone_lattice(P, f)


def test_face_cone_of_top_rejected():
    P = square()
    with pytest.raises(GeometryError):
        check_face_cone_lattice(P, P.lattice.top)


@pytest.mark.parametrize("k", range(len(centered)))
def test_normal_cone_of_face(k):
    P = centered[k]
    L = P.lattice
    for f in L.coatoms()[:3]:
        for g in L.below(f):
            if g != L.bottom:
                assert check_face_normal_cone(P, f, g)


@pytest.mark.parametrize("r", [1, 2, "1/3"])
def test_lift_polar(r):
    for P in centered:
        assert check_lift_polar(P, r)


def test_lift_polar_wrong_height_fails():
    P = square()
    assert cone_polar(lift(P, 2)) != lift(polar(P), -1)


def test_lift_needs_positive_height():
    with pytest.raises(GeometryError):
        check_lift_polar(square(), -1)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 5)), min_size=2, max_size=6))
def test_random_cone_polar_involution(gens):
    C = Cone([list(g) for g in gens], [], 3)
    D = cone_polar(C)
    assert cone_polar(D) == C
    for y in D.generators:
        assert all(sum(a * b for a, b in zip(y, x)) <= 0 for x in C.generators)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=3, max_size=8))
def test_random_polygon_normal_cone_identity(pts):
    P = hull(pts + [(5, 0), (-5, 0), (0, 5), (0, -5)])
    L = P.lattice
    Ps = polar(P)
    for f in range(1, len(L)):
        assert check_normal_cone_polar(P, f, Ps)
