from itertools import product as iproduct

import pytest
from hypothesis import given, settings, strategies as st

from projpoly.geometry import hull, lifted_join, unit_cube
from projpoly.poset import (
    FaceLattice, LatticeError, abstract_antiprism, chain, check_lattice, dual, find_isomorphism,
    from_vertex_sets, intervals_poset, is_isomorphism, lower_interval, point_lattice, polygon_lattice,
    product, pyramid, segment_lattice,
)


def triangle():
    return hull([(0, 0), (1, 0), (0, 1)]).lattice


def square():
    return hull([(1, 1), (-1, 1), (-1, -1), (1, -1)]).lattice


def cube3():
    return unit_cube(3).lattice


def brute_pairs(L):
    return [(g, f) for g in range(len(L)) for f in range(len(L)) if L.leq(g, f)]


def test_dual_is_elementwise_involution():
    L = cube3()
    D = dual(dual(L))
    assert D.labels == L.labels
    assert sorted(D.covers) == sorted(L.covers)
    assert (D.bottom, D.top) == (L.bottom, L.top)


def test_dual_swaps_bounds_and_complements_rank():
    L = cube3()
    D = dual(L)
    assert D.bottom == L.top and D.top == L.bottom
    for f in range(len(L)):
        assert D.rank[f] == L.dim - 1 - L.rank[f]


def test_triangle_self_dual():
    assert find_isomorphism(dual(triangle()), triangle()) is not None


def test_cube_dual_counts():
    assert cube3().f_vector() == (8, 12, 6)
    assert dual(cube3()).f_vector() == (6, 12, 8)


def test_product_of_chains_is_diamond():
    D = product(chain(2), chain(2))
    assert len(D) == 4
    assert D.f_vector() == (2,)


def test_product_cardinality():
    assert len(product(square(), triangle())) == len(square()) * len(triangle())


def test_product_order():
    A, B = square(), triangle()
    P = product(A, B)
    for a, x in [(0, 1), (2, 3)]:
        for b, y in [(A.top, B.top), (a, x)]:
            i, j = P.id_of((A.labels[a], B.labels[x])), P.id_of((A.labels[b], B.labels[y]))
            assert P.leq(i, j) == (A.leq(a, b) and B.leq(x, y))


def test_square_pyramid_matches_hull():
    geo = hull([(1, 1, 0), (-1, 1, 0), (-1, -1, 0), (1, -1, 0), (0, 0, 1)]).lattice
    pyr = pyramid(square())
    assert pyr.f_vector() == (5, 8, 5)
    assert find_isomorphism(pyr, geo) is not None


def test_pyramid_of_segment_is_triangle():
    assert find_isomorphism(pyramid(segment_lattice()), triangle()) is not None


def test_lower_interval_cases():
    L = cube3()
    assert len(lower_interval(L, L.top)) == len(L)
    assert len(lower_interval(L, L.bottom)) == 1
    for F in L.coatoms():
        assert find_isomorphism(lower_interval(L, F), square()) is not None


def test_interval_counts():
    T = triangle()
    assert len(T) == 8
    raw = intervals_poset(T, complete=False)
    assert len(raw) == len(brute_pairs(T)) == 27
    assert len(intervals_poset(chain(2), complete=False)) == 3


def test_interval_count_double_counting():
    L = cube3()
    assert len(intervals_poset(L, complete=False)) == sum(len(L.above(g)) for g in range(len(L)))


def test_square_antiprism_abstract_vs_geometric():
    raw = abstract_antiprism(square(), complete=False)
    assert len(raw) == 35
    A = abstract_antiprism(square())
    assert len(A) == 36
    S = hull([(1, 1), (-1, 1), (-1, -1), (1, -1)])
    geo = lifted_join(S, 0, hull([(1, 0), (0, 1), (-1, 0), (0, -1)]), 1)
    assert geo.f_vector() == (8, 16, 10)
    assert find_isomorphism(A, geo.lattice) is not None


def test_antiprism_of_two_chain():
    assert len(abstract_antiprism(chain(2), complete=False)) == 3


def test_cube_antiprism_abstract_vs_geometric():
    C = hull([p for p in iproduct((-1, 1), repeat=3)])
    Cs = hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    geo = lifted_join(C, 0, Cs, 1)
    assert find_isomorphism(abstract_antiprism(C.lattice), geo.lattice) is not None


def test_cube_euler():
    r = check_lattice(cube3())
    assert r.ok and r.euler and r.graded


def test_missing_join_flagged():
    # bot < a, b < c, d < top: a and b have two minimal upper bounds
    L = FaceLattice(["bot", "a", "b", "c", "d", "top"],
                    [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)])
    assert check_lattice(L).lattice is False
    assert not check_lattice(L).ok


def test_unbounded_rejected():
    with pytest.raises(LatticeError):
        FaceLattice(["a", "b", "c"], [(0, 1)])


def test_duplicate_labels_rejected():
    with pytest.raises(LatticeError):
        FaceLattice(["a", "a"], [(0, 1)])


def test_isomorphism_self_and_mismatch():
    L = cube3()
    m = find_isomorphism(L, L)
    assert m is not None and is_isomorphism(L, L, m)
    assert find_isomorphism(square(), triangle()) is None


def test_polygon_lattice_matches_hull():
    P = hull([(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)])
    assert find_isomorphism(polygon_lattice(6), P.lattice) is not None


def test_lattice_dict_round_trip():
    L = pyramid(polygon_lattice(["x", "y", "z"]))
    M = FaceLattice.from_dict(L.to_dict())
    assert M.labels == L.labels and sorted(M.covers) == sorted(L.covers) and M.marks == L.marks


@st.composite
def polygons(draw):
    k = draw(st.integers(3, 9))
    return polygon_lattice(k)


@st.composite
def small_lattices(draw):
    kind = draw(st.sampled_from(["polygon", "pyramid", "product", "chain"]))
    if kind == "polygon":
        return polygon_lattice(draw(st.integers(3, 7)))
    if kind == "pyramid":
        return pyramid(polygon_lattice(draw(st.integers(3, 6))))
    if kind == "product":
        return product(chain(draw(st.integers(2, 3))), polygon_lattice(draw(st.integers(3, 4))))
    return chain(draw(st.integers(1, 5)))


@settings(max_examples=30, deadline=None)
@given(small_lattices())
def test_dual_involution_property(L):
    D = dual(dual(L))
    assert sorted(D.covers) == sorted(L.covers)


@settings(max_examples=30, deadline=None)
@given(small_lattices())
def test_intervals_and_antiprism_match_enumeration(L):
    pairs = brute_pairs(L)
    assert len(intervals_poset(L, complete=False)) == len(pairs)
    raw = abstract_antiprism(L, complete=False)
    assert len(raw) == len(pairs)
    A = abstract_antiprism(L)
    lab = {x: i for i, x in enumerate(A.labels)}
    for (g, f) in pairs[:40]:
        for (g2, f2) in pairs[:40]:
            i, j = lab[(L.labels[g], L.labels[f])], lab[(L.labels[g2], L.labels[f2])]
            assert A.leq(i, j) == (L.leq(g, g2) and L.leq(f2, f))


@settings(max_examples=20, deadline=None)
@given(polygons(), polygons())
def test_product_associative(A, B):
    C = chain(2)
    left = product(product(A, B), C)
    right = product(A, product(B, C))
    assert len(left) == len(A) * len(B) * 2
    assert find_isomorphism(left, right) is not None


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)), min_size=4, max_size=9))
def test_hull_lattices_pass_checks(pts):
    P = hull(pts)
    r = check_lattice(P.lattice)
    assert r.ok
    assert P.lattice.dim == P.dim


def test_from_vertex_sets_square():
    L = from_vertex_sets([(0,), (1,), (2,), (3,), (0, 1), (1, 2), (2, 3), (0, 3)])
    assert find_isomorphism(L, square()) is not None


def test_point_lattice():
    assert len(point_lattice()) == 3
    # a 0-polytope has only the empty face below it
    L = hull([(1, 2)]).lattice
    assert len(L) == 2 and L.dim == 0
