import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from projpoly import linalg as la
from projpoly.constructions.anchors import O_NAMES, chi_one
from projpoly.constructions.assembly import Assembly
from projpoly.constructions.gadgets import adapter, connector, lamppost, port_base
from projpoly.constructions.tents import (
    ALLOWED, ConstructionError, VisibilitySpec, Whittle, check_transmitter_bases, forgetful_transmitter_gadget,
    full_transmitter, full_transmitter_gadget, geometric_transmitter, polygon_forgetful_gadget,
    polygon_visibility, tent, tent_geometric, whittled_base,
)
from projpoly.fixtures import anchor_polygons, square
from projpoly.geometry import hull, unit_cube
from projpoly.poset import (
    FaceLattice, check_lattice, find_isomorphism, iterated_pyramid, lower_interval, polygon_lattice, pyramid,
)
from projpoly.predicates import polygon_edges_ccw
from projpoly.projective import OrientedPoint, visibility_map

fin, inf = OrientedPoint.finite, OrientedPoint.at_infinity
PENT = hull([(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)])
# PENT with the vertex (3,2) cut off
HEXA = hull([(0, 0), (2, 0), (F(5, 2), 1), (2, F(5, 2)), (1, 3), (-1, 2)])


def test_tent_all_star_square():
    B = polygon_lattice(4)
    T = tent(VisibilitySpec(B, {f: "*" for f in range(len(B))}))
    assert len(T) == 4 * len(B)
    assert check_lattice(T).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 8), st.data())
def test_tent_cardinality(k, data):
    B = polygon_lattice(k)
    edges = {e: data.draw(st.sampled_from("+-0*")) for e in B.elements_of_rank(1)}
    spec = polygon_visibility(B, edges)
    try:
        T = tent(spec)
    except ConstructionError:
        return
    assert len(T) == sum(len(ALLOWED[s]) for s in spec.chi.values())


def test_tent_requires_star_at_bottom():
    B = polygon_lattice(3)
    chi = {f: "+" for f in range(len(B))}
    chi[B.top] = "0"
    with pytest.raises(ConstructionError):
        VisibilitySpec(B, chi)


def test_square_tent_from_infinity():
    S = square()
    p = inf((1, 0))
    R = tent_geometric(S, p)
    chi = R.spec.chi
    right = S.face_id([i for i, v in enumerate(S.vertices) if v[0] == 1])
    left = S.face_id([i for i, v in enumerate(S.vertices) if v[0] == -1])
    top = S.face_id([i for i, v in enumerate(S.vertices) if v[1] == 1])
    bottom = S.face_id([i for i, v in enumerate(S.vertices) if v[1] == -1])
    assert (chi[right], chi[left], chi[top], chi[bottom]) == ("+", "-", "0", "0")
    assert R.recover_point().same_projective_point(p)


def test_square_tent_from_finite_point():
    S = unit_cube(2)
    p = fin((2, F(1, 2)))
    R = tent_geometric(S, p)
    assert find_isomorphism(R.polytope.lattice, tent(R.spec)) is not None
    assert R.recover_point().same_projective_point(p)


def test_enneagon_tent():
    E = hull(anchor_polygons(F(1, 2))["enneagon"])
    p = fin((F(1, 2), -3))
    R = tent_geometric(E, p)
    signs = [R.spec.chi[e] for e in E.lattice.elements_of_rank(1)]
    assert len(signs) == 9 and set(signs) <= {"+", "-"}
    assert find_isomorphism(R.polytope.lattice, tent(R.spec)) is not None
    assert R.recover_point().same_projective_point(p)


def test_tent_rejects_point_in_base():
    with pytest.raises(Exception):
        tent_geometric(square(), fin((0, 0)))


def test_full_transmitter_of_pentagon_matches_hull():
    g = full_transmitter_gadget(PENT.lattice)
    T, _ = geometric_transmitter(PENT, PENT)
    assert len(g.lattice) == len(T.lattice)
    assert find_isomorphism(g.lattice, T.lattice) is not None
    assert check_transmitter_bases(g, PENT.lattice, PENT.lattice)


def test_forgetful_pentagon_hexagon_matches_hull():
    L = PENT.lattice
    v = L.id_of((PENT.vertices.index((3, 2)),))
    W = polygon_lattice(3)
    g = forgetful_transmitter_gadget(L, [Whittle(v, W, W.atoms()[0])])
    T, _ = geometric_transmitter(HEXA, PENT)
    assert find_isomorphism(g.lattice, T.lattice) is not None
    assert check_transmitter_bases(g, HEXA.lattice, L)


def test_full_transmitter_of_square_has_twin_pyramids():
    g = full_transmitter_gadget(polygon_lattice(4))
    L = g.lattice
    assert L.dim == 4 and check_lattice(L).ok
    a, b = lower_interval(L, g.faces["pyr0"]), lower_interval(L, g.faces["pyr1"])
    assert find_isomorphism(a, b) is not None
    assert find_isomorphism(a, pyramid(polygon_lattice(4))) is not None


def test_forgetful_enneagon_pentagon():
    E = ["oo", "0", "a", "1", "oo'", "h", "0'", "a'", "1'"]
    Fn = ["oo", "0", "oo'", "h", "0'"]
    g = polygon_forgetful_gadget(E, Fn)
    L = g.lattice
    assert check_lattice(L).ok
    assert find_isomorphism(lower_interval(L, g.faces["base0"]), polygon_lattice(9)) is not None
    assert find_isomorphism(lower_interval(L, g.faces["base1"]), polygon_lattice(5)) is not None


def test_forgetful_sides_skip_whittled_vertices():
    B1 = polygon_lattice(5)
    W = polygon_lattice(3)
    v = B1.atoms()[0]
    g = forgetful_transmitter_gadget(B1, [Whittle(v, W, W.atoms()[0])])
    B0 = whittled_base(B1, [Whittle(v, W, W.atoms()[0])])
    labels = set(g.lattice.labels)
    for f in range(len(B1)):
        key = ("0", B1.labels[f])
        if B0.has_label(key):
            present = any(isinstance(l, tuple) and l[0] == (key, B1.labels[f]) for l in labels)
            assert present == (f != v)


def test_connector_two_is_full_transmitter():
    B = polygon_lattice(4)
    assert find_isomorphism(connector(2, B).lattice, full_transmitter(B)) is not None


def test_connector_four_counts():
    B = polygon_lattice(4)
    c = connector(4, B)
    t = full_transmitter_gadget(B)
    A = Assembly()
    A.add("x", t)
    A.add("y", t)
    A.join("x", "prismoid", "y", "prismoid")
    assert len(c.lattice) == len(A.build(ports={}, faces={}).lattice)
    ports = [k for k in c.ports if k.startswith("pyr")]
    assert len(ports) == 4
    for k in ports:
        base = port_base(c, k, B)
        assert find_isomorphism(lower_interval(c.lattice, base), B) is not None


@pytest.mark.parametrize("n", [3, 5, 6])
def test_connector_port_census(n):
    B = polygon_lattice(3)
    c = connector(n, B)
    assert sorted(c.ports) == sorted(f"pyr{i}" for i in range(n))
    assert check_lattice(c.lattice).ok


def test_adapter_on_facet_is_pyramid():
    Fl = polygon_lattice(4)
    e = Fl.elements_of_rank(1)[0]
    g = adapter(Fl, e)
    assert find_isomorphism(g.lattice, pyramid(Fl)) is not None


def _permuted(L: FaceLattice, seed: int) -> FaceLattice:
    order = list(range(len(L)))
    random.Random(seed).shuffle(order)
    pos = {old: new for new, old in enumerate(order)}
    labels = [L.labels[old] for old in order]
    return FaceLattice(labels, [(pos[a], pos[b]) for a, b in L.covers])


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_adapter_on_vertex_is_iterated_pyramid(seed):
    Fl = _permuted(polygon_lattice(4), seed)
    v = Fl.atoms()[0]
    g = adapter(Fl, v)
    L = g.lattice
    assert check_lattice(L).ok
    ag = g.port("ag").facet
    want = iterated_pyramid(lower_interval(Fl, v), 2)
    assert find_isomorphism(lower_interval(L, ag), want) is not None
    aF = g.faces["aF"]
    assert find_isomorphism(lower_interval(L, aF), Fl) is not None


def test_adapter_on_cube_vertex():
    C = unit_cube(3).lattice
    g = adapter(C, C.atoms()[0])
    assert check_lattice(g.lattice).ok
    ag = g.port("ag").facet
    want = iterated_pyramid(lower_interval(C, C.atoms()[0]), 3)
    assert find_isomorphism(lower_interval(g.lattice, ag), want) is not None


def _octagon_names(P):
    """Edge ids of the truncated-square octagon named by walking from the edge on y = 0."""
    order = polygon_edges_ccw(P)
    L = P.lattice
    ids = [P.face_id(list(e)) for e in order]
    start = next(i for i, e in enumerate(order) if all(P.vertices[j][1] == 0 for j in e))
    names = ["0", "a", "1", "oo'", "0'", "a'", "1'", "oo"]
    out = {}
    k = len(ids)
    # walk counterclockwise: the next edge after y = 0 is the slope-alpha cut
    nxt = (start + 1) % k
    step = 1
    e = order[nxt]
    (x0, y0), (x1, y1) = P.vertices[e[0]], P.vertices[e[1]]
    if x0 == x1 or (y1 - y0) / (x1 - x0) != F(1, 2):
        step = -1
    for i in range(k):
        out[ids[(start + step * i) % k]] = names[i]
    return out, L


def test_x1_lamppost_realized_by_octagon():
    P = hull(anchor_polygons(F(1, 2))["octagon"])
    names, L = _octagon_names(P)
    O = polygon_lattice(O_NAMES)
    spec = polygon_visibility(O, chi_one())
    want = {names[e]: spec.chi[O.id_of(names[e])] for e in names}
    for p1 in (inf((1, 1)), inf((-1, -1))):
        vis = visibility_map(p1, P)
        if all(vis[e] == want[names[e]] for e in names):
            break
    else:
        raise AssertionError("no orientation of p1 realizes chi_1")
    # v0 = (0,0), v1 = (1,1) and p1 are collinear
    assert la.rank([[0, 0, 1], [1, 1, 1], list(p1.h)]) == 2
    g = lamppost(spec, ("v", "oo", "0"), ("v", "oo'", "0'"))
    assert check_lattice(g.lattice).ok


def test_lamppost_rejects_comparable_faces():
    B = polygon_lattice(4)
    spec = polygon_visibility(B, {e: "+" for e in B.elements_of_rank(1)})
    v = B.atoms()[0]
    with pytest.raises(ConstructionError):
        lamppost(spec, v, B.up[v][0])


def test_lamppost_square_consistent_line():
    S = square()
    p = fin((3, 0))
    spec = VisibilitySpec(S.lattice, visibility_map(p, S))
    # the line from the vertex (-1,1) through p crosses the right edge in its interior
    v = S.face_id([S.vertices.index((-1, 1))])
    right = S.face_id([i for i, w in enumerate(S.vertices) if w[0] == 1])
    assert check_lattice(lamppost(spec, v, right).lattice).ok
