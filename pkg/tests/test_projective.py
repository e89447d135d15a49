import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from projpoly import linalg as la
from projpoly.cones import check_polar_projectivity, cone_polar
from projpoly.corpus import random_admissible_projectivity
from projpoly.fixtures import centered_cube, centrally_symmetric_hexagon, dodecagon, square
from projpoly.geometry import Cone, GeometryError, HalfSpace, hull, intersect_halfspaces, unit_cube
from projpoly.projective import (
    INFINITY, NEG, Flat, OrientedPoint, Projectivity, apply_projectivity, cross_ratio, embed_from_flat,
    flat_join, flat_meet, horizon, line_through, projective_closure, regular_pentagon_cross_ratio,
    restrict_to_flat, visibility, visibility_map,
)

fin, inf = OrientedPoint.finite, OrientedPoint.at_infinity


def line_interval(P, x, d):
    """[s_min, s_max] with x + s d in P, from the facet inequalities (exact)."""
    lo, hi = None, None
    for F_ in P.facets:
        h = F_.halfspace
        a, b = la.dot(h.normal, d), h.offset - la.dot(h.normal, x)
        if a > 0:
            hi = b / a if hi is None else min(hi, b / a)
        elif a < 0:
            lo = b / a if lo is None else max(lo, b / a)
    return lo, hi


def oracle_visibility(p, P, f):
    """Walk the line from a relative interior point of f toward p and away from it."""
    if f == P.lattice.bottom:
        return "*"
    x = P.barycenter(f)
    d = la.sub(p.point(), x) if p.is_finite else list(p.h[:-1])
    lo, hi = line_interval(P, x, d)
    front = hi == 0
    back = lo == 0
    return {(True, True): "*", (True, False): "+", (False, True): "-", (False, False): "0"}[(front, back)]


def test_square_visibility_example():
    S = unit_cube(2)
    p = fin((2, F(1, 2)))
    right, left = S.face_id([i for i, v in enumerate(S.vertices) if v[0] == 1]), \
        S.face_id([i for i, v in enumerate(S.vertices) if v[0] == 0])
    assert visibility(p, S, right) == "+"
    assert visibility(p, S, left) == "-"


def test_facet_through_p_is_zero():
    S = unit_cube(2)
    p = fin((3, 1))
    top = S.face_id([i for i, v in enumerate(S.vertices) if v[1] == 1])
    assert visibility(p, S, top) == "0"


def test_visibility_rejects_points_of_p():
    with pytest.raises(GeometryError):
        visibility(fin((0, 0)), square(), 1)


points2 = st.tuples(st.integers(-7, 7), st.integers(-7, 7), st.integers(1, 3), st.booleans())


def make_point(t):
    x, y, q, at_inf = t
    if at_inf:
        assume((x, y) != (0, 0))
        return inf((x, y))
    return fin((F(x, q), F(y, q)))


shapes = [square(), hull([(0, -1), (3, 0), (1, 2), (-2, 1)]), centrally_symmetric_hexagon(),
          hull([(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)])]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(range(len(shapes))), points2)
def test_visibility_matches_line_oracle(k, t):
    P = shapes[k]
    p = make_point(t)
    assume(not (p.is_finite and P.contains(p.point())))
    for f in range(len(P.lattice)):
        assert visibility(p, P, f) == oracle_visibility(p, P, f)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(range(len(shapes))), points2)
def test_antipode_negates_visibility(k, t):
    P = shapes[k]
    p = make_point(t)
    assume(not (p.is_finite and P.contains(p.point())))
    a, b = visibility_map(p, P), visibility_map(p.neg(), P)
    assert b == {f: NEG[s] for f, s in a.items()}


@settings(max_examples=20, deadline=None)
@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)))
def test_visibility_3d_matches_oracle(t):
    C = centered_cube(3)
    p = fin(tuple(F(x, 2) for x in t))
    assume(not C.contains(p.point()))
    for f in range(len(C.lattice)):
        assert visibility(p, C, f) == oracle_visibility(p, C, f)


def test_cross_ratio_basics():
    p0, p1, pinf = fin((0, 0)), fin((1, 0)), inf((1, 0))
    assert cross_ratio(p0, p1, p0, pinf) == 0
    assert cross_ratio(p1, p1, p0, pinf) == 1
    assert cross_ratio(fin((2, 0)), p1, p0, pinf) == 2
    assert cross_ratio(pinf, p1, p0, pinf) == INFINITY


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=30))
def test_cross_ratio_is_affine_coordinate(t):
    assert cross_ratio(fin((t, 2 * t)), fin((1, 2)), fin((0, 0)), inf((1, 2))) == t


def test_regular_pentagon_cross_ratio():
    assert math.isclose(regular_pentagon_cross_ratio(), (1 + math.sqrt(5)) / 2, rel_tol=1e-9)


def test_join_and_meet():
    a, b = fin((0, 0)), fin((1, 1))
    L = flat_join(Flat([a.h]), Flat([b.h]))
    assert L == line_through(a, b) and L.rank == 2
    l1, l2 = line_through(fin((0, 0)), fin((1, 2))), line_through(fin((1, 0)), fin((2, 2)))
    m = flat_meet(l1, l2).as_point()
    assert not m.is_finite and m.same_projective_point(inf((1, 2)))


def test_hexagon_opposite_edge_points_collinear_at_infinity():
    H = centrally_symmetric_hexagon()
    pts = [v for v in H.vertices]
    L = H.lattice
    edges = [P for P in L.elements_of_rank(1)]
    meets = []
    for e in edges:
        a = H.face_vertices(e)
        opp = [g for g in edges if sorted(la.neg(v) for v in H.face_vertices(g)) == sorted(map(list, a))]
        if not opp or opp[0] < e:
            continue
        m = flat_meet(projective_closure(a), projective_closure(H.face_vertices(opp[0]))).as_point()
        meets.append(m)
    assert len(meets) == 3 and len(pts) == 6
    assert all(not m.is_finite for m in meets)
    assert la.rank([m.h for m in meets]) == 2
    assert all(horizon(2).contains(m) for m in meets)


def test_identity_and_translation():
    S = square()
    assert sorted(apply_projectivity(Projectivity.identity(2), S).vertices) == sorted(S.vertices)
    T = Projectivity.from_parts([[1, 0], [0, 1]], [2, -1])
    assert sorted(apply_projectivity(T, S).vertices) == sorted(hull([(3, 0), (1, 0), (1, -2), (3, -2)]).vertices)


@pytest.mark.parametrize("k", range(8))
def test_polar_projectivity_on_random_maps(k):
    import random
    rng = random.Random(k)
    for P in (dodecagon(), centered_cube(3), square()):
        pi = random_admissible_projectivity(rng, P)
        assert check_polar_projectivity(pi, P)


def test_restrict_square_in_plane():
    P = hull([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)])
    Q = restrict_to_flat(P)
    assert Q.ambient == 2 and Q.dim == 2
    assert sorted(Q.vertices) == sorted(unit_cube(2).vertices)
    back = embed_from_flat(Q, projective_closure(P), P.vertices[0])
    assert sorted(back.vertices) == sorted(P.vertices)


def test_tangent_cone_of_embedded_pentagon_face():
    Q = intersect_halfspaces(unit_cube(3), [HalfSpace((1, 1, 1), F(3, 2))])
    pent = [f for f in Q.lattice.coatoms() if len(Q.face_vertex_indices(f)) == 5][0]
    Fp = hull(Q.face_vertices(pent))
    V = projective_closure(Fp)
    p = Fp.barycenter()
    local = restrict_to_flat(Fp, V, p)
    R, _ = la.rref(V.affine_directions())

    def lin(v):
        out = la.zeros(3)
        for c, r in zip(v, R):
            out = la.add(out, la.scale(c, r))
        return out

    emb = embed_from_flat(local, V, p)
    assert sorted(emb.vertices) == sorted(Fp.vertices)
    for g in range(len(local.lattice)):
        if g in (local.lattice.bottom, local.lattice.top):
            continue
        idx = [emb.vertices.index(tuple(la.add(p, lin(v))))
               for v in local.face_vertices(g)]
        g3 = emb.smallest_face(idx)
        lhs = cone_polar(emb.normal_cone(g3))
        loc = cone_polar(local.normal_cone(g))
        image = Cone([lin(v) for v in loc.generators], [lin(v) for v in loc.lineality], 3)
        assert lhs == image
