import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from projpoly import linalg as la
from projpoly.corpus import triangle_square_pair, random_admissible_projectivity
from projpoly.fixtures import (
    G_EDGE, anchor_polygons, centered_cube, centrally_symmetric_hexagon, dodecagon, quad_identification,
    quad_p1, quad_p2, segment, square,
)
from projpoly.geometry import hull, lifted_join
from projpoly.predicates import (
    PredicateError, PrismoidSpec, antiprism_of, balanced, face_inheritance, perfectly_centered,
    prismoid_compatible, prismoid_sides_from_polytope, recognize_frame,
)
from projpoly.poset import abstract_antiprism, find_isomorphism
from projpoly.projective import INFINITY, apply_projectivity


def foot_in_relint(a, b):
    """Does the foot of the perpendicular from the origin to line ab lie strictly between a and b?"""
    d = la.sub(b, a)
    t = -la.dot(a, d) / la.dot(d, d)
    return 0 < t < 1


def polygon_perfectly_centered_oracle(P):
    L = P.lattice
    return all(foot_in_relint(*P.face_vertices(e)) for e in L.elements_of_rank(1))


def test_square_balanced_with_itself():
    assert balanced(square(), square()).verdict


def test_cube_perfectly_centered():
    ok, _ = perfectly_centered(centered_cube(3))
    assert ok


def test_g_unbalanced_at_its_edge():
    G = dodecagon()
    rep = balanced(G, G)
    assert not rep.verdict and rep.witnesses
    ok, wit = perfectly_centered(G)
    assert not ok
    edge = sorted(tuple(map(F, v)) for v in G_EDGE)
    w = [w for w in wit if sorted(map(tuple, w.vertices)) == edge][0]
    assert w.normal_slope == F(1, 2)


def test_quadrilaterals_balanced_one_way():
    P1, P2 = quad_p1(), quad_p2()
    m = quad_identification(P1, P2)
    inv = [0] * len(m)
    for i, j in enumerate(m):
        inv[j] = i
    assert balanced(P1, P2, m).verdict
    assert not balanced(P2, P1, inv).verdict


def test_quadrilaterals_auto_identification():
    assert balanced(quad_p1(), quad_p2(), "auto").verdict


def test_balance_needs_centered():
    with pytest.raises(PredicateError):
        balanced(hull([(0, 0), (1, 0), (0, 1)]), square())


polys = [square(), dodecagon(), centrally_symmetric_hexagon(), quad_p1(), quad_p2(), segment(),
         hull([(3, 0), (0, 1), (-2, 0), (0, -4)]), hull([(1, 0), (0, 1), (-1, -1)]),
         hull([(5, 1), (-1, 2), (-2, -3)]), centered_cube(3),
         hull([(4, 3, 0), (-2, 1, 1), (0, -3, 1), (0, 0, -2)])]


@pytest.mark.parametrize("k", range(len(polys)))
def test_perfect_centering_equals_self_balance(k):
    P = polys[k]
    ok, _ = perfectly_centered(P)
    assert balanced(P, P).verdict == ok
    if P.dim == 2:
        assert ok == polygon_perfectly_centered_oracle(P)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=7))
def test_perfect_centering_polygon_oracle(pts):
    P = hull(pts)
    assume(P.dim == 2 and P.is_centered())
    ok, _ = perfectly_centered(P)
    assert ok == polygon_perfectly_centered_oracle(P)
    assert balanced(P, P, stop_early=True).verdict == ok


def test_antiprism_of_square_square():
    S = square()
    A = antiprism_of(S, S)
    assert A.f_vector() == (8, 16, 10)


def test_antiprism_of_segment_is_quadrilateral():
    A = antiprism_of(segment(), segment())
    assert A.dim == 2 and A.nverts == 4


def test_antiprism_of_cube():
    C = centered_cube(3)
    A = antiprism_of(C, C)
    assert find_isomorphism(A.lattice, abstract_antiprism(C.lattice)) is not None


def test_antiprism_of_unbalanced_raises():
    G = dodecagon()
    with pytest.raises(PredicateError):
        antiprism_of(G, G)


def test_face_inheritance_on_quadrilaterals():
    P1, P2 = quad_p1(), quad_p2()
    m = quad_identification(P1, P2)
    for f in P1.lattice.elements_of_rank(1):
        assert face_inheritance(P1, P2, m, f).ok


def test_face_inheritance_on_cube_facets():
    C = centered_cube(3)
    m = list(range(len(C.lattice)))
    for f in C.lattice.coatoms()[:2]:
        assert face_inheritance(C, C, m, f).ok


def _prismoid(B0, B1):
    P = lifted_join(B0, 0, B1, 1)
    n0 = B0.nverts
    return prismoid_sides_from_polytope(P, P.face_id(range(n0)), P.face_id(range(n0, P.nverts)))


def test_triangle_square_prismoid_compatible():
    T, S = triangle_square_pair()
    spec, B0, B1 = _prismoid(T, S)
    assert prismoid_compatible(B0, B1, spec)


def test_square_prism_compatible():
    S = square()
    spec, B0, B1 = _prismoid(S, S)
    assert prismoid_compatible(B0, B1, spec)


def test_rotated_base_breaks_compatibility():
    T, S = triangle_square_pair()
    spec, B0, B1 = _prismoid(T, S)
    # rotate the triangle by a quarter turn: its rays now collide with the square's differently
    R = hull([(-y, x) for x, y in T.vertices])
    spec_r = PrismoidSpec(R.lattice, B1.lattice, spec.sides)
    assert R.lattice.labels == B0.lattice.labels
    assert not prismoid_compatible(R, B1, spec_r)


def test_octagon_frame_values():
    P = hull(anchor_polygons(F(1, 2))["octagon"])
    fr = recognize_frame(P, {"0": 0, "1": 2, "oo": 3})
    assert [fr.values[i] for i in range(4)] == [0, F(1, 2), 1, INFINITY]


def test_symmetric_hexagon_frame_on_horizon():
    fr = recognize_frame(centrally_symmetric_hexagon())
    assert fr is not None
    assert all(not p.is_finite for p in fr.points)


def test_generic_hexagon_has_no_frame():
    rng = random.Random(3)
    for _ in range(5):
        P = hull([(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)])
        pi = random_admissible_projectivity(rng, P)
        Q = apply_projectivity(pi, P)
        assert recognize_frame(Q) is not None  # projective images stay frames
    H = hull([(3, 0), (1, 2), (-1, 3), (-3, 1), (-2, -2), (2, -3)])
    assert recognize_frame(H) is None


def test_projective_copy_of_g_not_balanced_with_g():
    G = dodecagon()
    pi = random_admissible_projectivity(random.Random(5), G)
    assert not balanced(G, apply_projectivity(pi, G), stop_early=True).verdict

