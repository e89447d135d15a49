"""Seeded instance corpora for the property and acceptance suites."""
from __future__ import annotations

import random
from fractions import Fraction

from . import linalg as la
from .geometry import VPolytope, hull, unit_cube
from .projective import OrientedPoint, Projectivity, apply_projectivity


def _small(rng: random.Random, scale: int) -> Fraction:
    return Fraction(rng.randint(-3, 3), scale * rng.randint(1, 4))


def random_admissible_projectivity(rng: random.Random, P: VPolytope, tries: int = 200) -> Projectivity:
    """A rational projectivity near the identity, positive on P, keeping an interior origin.

    The size of the perturbation is scaled by the largest coordinate of P.
    """
    d = P.ambient
    R = max(abs(x) for v in P.vertices for x in v) or 1
    R = int(-(-R // 1))
    for _ in range(tries):
        A = [[Fraction(int(i == j)) + _small(rng, 4) for j in range(d)] for i in range(d)]
        b = [_small(rng, 4) * R for _ in range(d)]
        c = [_small(rng, 4 * R) for _ in range(d)]
        M = [A[i] + [b[i]] for i in range(d)] + [c + [Fraction(1)]]
        if la.det(M) <= 0:
            continue
        pi = Projectivity(M)
        if not pi.preserves_orientation_on(P.vertices):
            continue
        if apply_projectivity(pi, P).is_centered():
            return pi
    raise ValueError("no admissible projectivity found")


def projective_copy_pairs(P: VPolytope, n: int = 100, seed: int = 0) -> list[tuple[Projectivity, Projectivity]]:
    rng = random.Random(seed)
    return [(random_admissible_projectivity(rng, P), random_admissible_projectivity(rng, P)) for _ in range(n)]


# tents


def _shapes():
    F = Fraction
    return {
        "triangle": hull([(0, 0), (2, 0), (0, 2)]),
        "square": hull([(1, 1), (-1, 1), (-1, -1), (1, -1)]),
        "pentagon": hull([(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)]),
        "hexagon": hull([(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]),
        "kite": hull([(0, -1), (2, 0), (0, 3), (-2, 0)]),
        "thin": hull([(0, 0), (F(7, 2), F(1, 3)), (3, 1), (F(-1, 2), F(2, 3))]),
        "tetrahedron": hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]),
        "cube": unit_cube(3),
        "octahedron": hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]),
        "prism": hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)]),
    }


def tent_corpus() -> list[tuple[str, VPolytope, object]]:
    """(name, base, point) triples; points are finite, at infinity, or on a facet hyperplane."""
    S = _shapes()
    inf = OrientedPoint.at_infinity
    fin = OrientedPoint.finite
    return [
        ("triangle/far", S["triangle"], fin((5, 4))),
        ("triangle/inf", S["triangle"], inf((1, 0))),
        ("triangle/facet-line", S["triangle"], fin((4, 0))),
        ("triangle/vertex-cone", S["triangle"], fin((-1, -1))),
        ("square/near", S["square"], fin((2, Fraction(1, 2)))),
        ("square/inf", S["square"], inf((1, 0))),
        ("square/inf-diag", S["square"], inf((1, 1))),
        ("square/facet-line", S["square"], fin((3, 1))),
        ("square/far", S["square"], fin((3, 5))),
        ("pentagon/far", S["pentagon"], fin((7, -3))),
        ("pentagon/inf", S["pentagon"], inf((-2, 1))),
        ("hexagon/facet-line", S["hexagon"], fin((3, -2))),
        ("hexagon/near", S["hexagon"], fin((0, 3))),
        ("kite/inf", S["kite"], inf((0, 1))),
        ("thin/far", S["thin"], fin((1, -5))),
        ("tetrahedron/far", S["tetrahedron"], fin((2, 2, 2))),
        ("tetrahedron/facet-plane", S["tetrahedron"], fin((2, 1, 0))),
        ("tetrahedron/inf", S["tetrahedron"], inf((1, 1, 1))),
        ("cube/near", S["cube"], fin((Fraction(1, 2), Fraction(1, 2), 2))),
        ("cube/facet-plane", S["cube"], fin((2, Fraction(1, 3), 1))),
        ("cube/inf", S["cube"], inf((1, 2, 3))),
        ("octahedron/far", S["octahedron"], fin((2, 3, 1))),
        ("octahedron/inf", S["octahedron"], inf((0, 0, 1))),
        ("prism/facet-plane", S["prism"], fin((Fraction(1, 3), Fraction(1, 3), 2))),
    ]


# fans


def triangle_square_pair() -> tuple[VPolytope, VPolytope]:
    """A triangle and a square whose fans share exactly one ray; the refinement is hexagonal."""
    return hull([(0, 1), (-1, -1), (1, -1)]), hull([(1, 1), (-1, 1), (-1, -1), (1, -1)])


def _random_polytope(rng: random.Random, d: int) -> VPolytope:
    while True:
        pts = [tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(d + 2 + rng.randint(0, 3))]
        P = hull(pts)
        if P.dim == d:
            return P


def fan_pairs(seed: int = 0, n: int = 10) -> list[tuple[str, VPolytope, VPolytope]]:
    """The triangle/square instance followed by seeded random 2D and 3D pairs."""
    rng = random.Random(seed)
    out = [("triangle/square", *triangle_square_pair())]
    k = 0
    while len(out) < n:
        d = 2 if k % 2 == 0 else 3
        out.append((f"random{k}/d{d}", _random_polytope(rng, d), _random_polytope(rng, d)))
        k += 1
    return out
