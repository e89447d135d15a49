from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_facets, brute_vertices
from projpoly.corpus import triangle_square_pair
from projpoly.fixtures import G_POLAR_SEEDS, centered_cube, dodecagon, segment, signed_permutations, square
from projpoly.geometry import (
    Cone, GeometryError, HalfSpace, common_refinement, convex_join, fans_match, hull, intersect_halfspaces,
    lifted_join, minkowski_sum, normal_fan, polar, relint_meet, unit_cube,
)
from projpoly.geometry import _relint_info, relints_meet_via
from projpoly.poset import check_lattice, find_isomorphism, pyramid

pts2 = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=10)
pts3 = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)), min_size=4, max_size=9)


def facet_sets(P):
    L = P.lattice
    return {frozenset(P.face_vertex_indices(f)) for f in L.coatoms()}


def test_triangle_hull():
    T = hull([(0, 0), (1, 0), (0, 1)])
    assert len(T.lattice) == 8 and T.dim == 2


def test_g_is_a_dodecagon():
    G = dodecagon()
    assert G.nverts == 12 and G.f_vector() == (12, 12)
    assert set(G.vertices) == brute_vertices(signed_permutations([(8, 5), (7, 7)]))


def test_interior_points_dropped():
    P = hull([(0, 0), (2, 0), (0, 2), (1, 1), (F(1, 2), F(1, 2))])
    assert P.nverts == 3


def test_cube_cut_facet_census():
    C = unit_cube(3)
    P = intersect_halfspaces(C, [HalfSpace((1, 1, 1), F(3, 2))])
    assert facet_sets(P) == brute_facets(P.vertices)
    census = sorted(len(s) for s in facet_sets(P))
    assert census == sorted(len(s) for s in brute_facets(P.vertices))
    assert census.count(5) == 3


def test_redundant_halfspace_keeps_polytope():
    C = unit_cube(3)
    P = intersect_halfspaces(C, [HalfSpace((1, 1, 1), F(4))])
    assert sorted(P.vertices) == sorted(C.vertices)


def test_square_cut_is_pentagon():
    P = intersect_halfspaces(unit_cube(2), [HalfSpace((1, 1), F(3, 2))])
    oracle = hull([(0, 0), (1, 0), (1, F(1, 2)), (F(1, 2), 1), (0, 1)])
    assert sorted(P.vertices) == sorted(oracle.vertices)
    assert P.nverts == 5


def test_polar_of_g():
    Gs = polar(dodecagon())
    assert set(Gs.vertices) == set(signed_permutations(G_POLAR_SEEDS))


def test_polar_of_square_is_diamond():
    assert set(polar(square()).vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_polar_needs_centered():
    with pytest.raises(GeometryError):
        polar(unit_cube(2))


def test_lifted_join_square_point_is_pyramid():
    P = lifted_join(square(), 0, hull([(0, 0)]), 1)
    assert P.f_vector() == (5, 8, 5)
    assert find_isomorphism(P.lattice, pyramid(square().lattice)) is not None


def test_square_antiprism():
    S = square()
    A = lifted_join(S, 0, polar(S), 1)
    assert A.f_vector() == (8, 16, 10)


def test_convex_join_with_itself():
    P = hull([(0, 0), (3, 1), (1, 2)])
    assert sorted(convex_join(P, P).vertices) == sorted(P.vertices)


def test_normal_cone_of_right_edge():
    S = square()
    right = S.face_id([0, 3])
    assert S.normal_cone(right) == Cone([[1, 0]], [], 2)


def test_normal_fan_of_segment():
    fan = normal_fan(segment())
    dims = sorted(C.dim for C in fan.cones.values())
    assert dims == [0, 1, 1]
    lin = [C for C in fan.cones.values() if C.dim == 0]
    assert len(lin) == 1


def test_triangle_square_refinement_is_hexagonal():
    T, S = triangle_square_pair()
    R = common_refinement(normal_fan(T), normal_fan(S))
    rays = [C for C in R.cones.values() if C.dim == 1]
    assert len(rays) == 6
    assert len(R.cones) == 13
    ok, problems = fans_match(minkowski_sum(T, S), T, S)
    assert ok, problems


def test_refinement_with_itself():
    S = hull([(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)])
    N = normal_fan(S)
    R = common_refinement(N, N)
    assert {C.canonical() for C in R.cones.values()} == {C.canonical() for C in N.cones.values()}


@settings(max_examples=25, deadline=None)
@given(pts2)
def test_hull_facets_match_brute_force_2d(pts):
    P = hull(pts)
    if P.dim < 2:
        return
    assert facet_sets(P) == brute_facets(P.vertices)
    assert check_lattice(P.lattice).ok


@settings(max_examples=20, deadline=None)
@given(pts3)
def test_hull_facets_match_brute_force_3d(pts):
    P = hull(pts)
    if P.dim < 3:
        return
    assert facet_sets(P) == brute_facets(P.vertices)


@settings(max_examples=15, deadline=None)
@given(pts3)
def test_polar_involution(pts):
    P = hull([tuple(2 * x for x in p) for p in pts] + [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    assert sorted(polar(polar(P)).vertices) == sorted(P.vertices)


@settings(max_examples=12, deadline=None)
@given(pts2, pts2)
def test_fan_refinement_is_minkowski_fan(a, b):
    P0, P1 = hull(a), hull(b)
    if P0.dim < 2 or P1.dim < 2:
        return
    ok, problems = fans_match(minkowski_sum(P0, P1), P0, P1)
    assert ok, problems


def test_cube_lattice_rank():
    C = centered_cube(3)
    assert C.lattice.dim == 3 and check_lattice(C.lattice).ok


cone_gens = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(any),
                     min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(cone_gens, cone_gens)
def test_relint_meet_shortcut_agrees_with_lp(g1, g2):
    C1, C2 = Cone([list(g) for g in g1], [], 3), Cone([list(g) for g in g2], [], 3)
    fast = relints_meet_via(C1.intersect(C2), _relint_info(C1), _relint_info(C2))
    assert fast == relint_meet(C1, C2)
