"""Polarity rules for cones, face cones and normal cones.

Each ``check_*`` function computes both sides of an identity by separate
routes and compares them exactly. Cone polarity uses the convention
C* = {y : <y, x> <= 0 for x in C}, under which the polar of a normal cone
is the tangent cone.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg as la
from .geometry import Cone, GeometryError, VPolytope, cone_from_hrep, hull, polar, polar_face
from .poset import find_isomorphism, lower_interval, product
from .projective import Projectivity, apply_projectivity


def cone_polar(C: Cone) -> Cone:
    D = C.dual_hrep()
    return Cone([la.neg(g) for g in D.generators], D.lineality, C.ambient)


def cone_sum(C1: Cone, C2: Cone) -> Cone:
    if C1.ambient != C2.ambient:
        raise GeometryError("cones live in different spaces")
    return Cone(C1.generators + C2.generators, C1.lineality + C2.lineality, C1.ambient)


def complementary(C1: Cone, C2: Cone) -> bool:
    s1, s2 = C1.span(), C2.span()
    return len(s1) + len(s2) == C1.ambient and la.rank(s1 + s2) == C1.ambient


def _coords(v, basis):
    """Coordinates of v in the basis (v must lie in its span)."""
    G = [[la.dot(a, b) for b in basis] for a in basis]
    return la.solve(G, [la.dot(a, v) for a in basis])


def diamond_sum(C1: Cone, C2: Cone) -> Cone:
    """C1^diamond (+) C2^diamond for cones in complementary subspaces.

    Each polar is taken inside the span of its cone, in the coordinates of
    a basis of that span, and the functional is extended by zero on the
    other subspace.
    """
    if not complementary(C1, C2):
        raise GeometryError("cones do not span complementary subspaces")
    B1, B2 = C1.span(), C2.span()
    T = B1 + B2  # rows: a basis of the whole space
    gens, lin = [], []
    for k, (C, B) in enumerate(((C1, B1), (C2, B2))):
        local = Cone([_coords(g, B) for g in C.generators], [_coords(g, B) for g in C.lineality], len(B))
        P = cone_polar(local)
        pad = [Fraction(0)] * len(B2 if k == 0 else B1)
        for src, dst in ((P.generators, gens), (P.lineality, lin)):
            for a in src:
                vals = list(a) + pad if k == 0 else pad + list(a)
                dst.append(la.solve(T, vals))
    return Cone(gens, lin, C1.ambient)


def lift(P: VPolytope, r) -> Cone:
    """cone([P; r])."""
    r = la.frac(r)
    return Cone([list(v) + [r] for v in P.vertices], [], P.ambient + 1)


# the identities


def check_sum_lattice(C1: Cone, C2: Cone) -> bool:
    """labl(C1 + C2) = labl(C1) x labl(C2)."""
    if not complementary(C1, C2):
        raise GeometryError("cones do not span complementary subspaces")
    return find_isomorphism(cone_sum(C1, C2).labl(), product(C1.labl(), C2.labl())) is not None


def check_sum_polar(C1: Cone, C2: Cone) -> bool:
    """(C1 + C2)* = C1^diamond (+) C2^diamond."""
    return cone_polar(cone_sum(C1, C2)) == diamond_sum(C1, C2)


def check_face_cone_lattice(P: VPolytope, f: int) -> bool:
    """labl(cone(P, f)) = [bot, f] for centered P and a proper face f."""
    _need_centered(P)
    if f == P.lattice.top:
        raise GeometryError("the cone over P itself is the whole space")
    return find_isomorphism(P.cone_over_face(f).labl(), lower_interval(P.lattice, f)) is not None


def check_normal_cone_polar(P: VPolytope, f: int, Ps: VPolytope | None = None) -> bool:
    """ncone(P, f) = cone(P*, f*)."""
    _need_centered(P)
    Ps = Ps or polar(P)
    return P.normal_cone(f) == Ps.cone_over_face(polar_face(P, f, Ps))


def _tangent_face(P: VPolytope, g: int, f: int) -> Cone:
    """face(ncone(P, g)*, f): the tangent cone at g cut by an objective exposing f."""
    T = cone_polar(P.normal_cone(g))
    N = P.normal_cone(f)
    c = N.relint_point()
    return T.intersect(cone_from_hrep([], [c], P.ambient))


def check_face_normal_cone(P: VPolytope, f: int, g: int) -> bool:
    """ncone(face(P, f), g) = face(ncone(P, g)*, f)* for g <= f, g not bottom."""
    L = P.lattice
    if not L.leq(g, f) or g == L.bottom:
        raise GeometryError("need bottom < g <= f")
    F = hull(P.face_vertices(f))
    idx = [F.vertices.index(v) for v in P.face_vertices(g)]
    left = F.normal_cone(F.smallest_face(idx))
    return left == cone_polar(_tangent_face(P, g, f))


def check_lift_polar(P: VPolytope, r) -> bool:
    """cone([P; r])* = cone([P*; -1/r]) for centered P and r > 0."""
    _need_centered(P)
    r = la.frac(r)
    if r <= 0:
        raise GeometryError("r must be positive")
    return cone_polar(lift(P, r)) == lift(polar(P), -1 / r)


def check_polar_projectivity(pi: Projectivity, P: VPolytope) -> bool:
    """pi(P)* = pi^{-*}(P*) for centered P with pi(P) centered and pi positive on P."""
    _need_centered(P)
    if not pi.preserves_orientation_on(P.vertices):
        raise GeometryError("projectivity does not preserve orientation on P")
    Q = apply_projectivity(pi, P)
    _need_centered(Q)
    left = polar(Q)
    right = apply_projectivity(pi.polar_transform(), polar(P))
    return sorted(left.vertices) == sorted(right.vertices)


def _need_centered(P: VPolytope) -> None:
    if not P.is_centered():
        raise GeometryError("polytope is not centered")
