"""Named polytopes used by the predicates, certificates and the CLI."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .geometry import VPolytope, hull, unit_cube
from .predicates import vertex_identification


def signed_permutations(seeds) -> list[tuple]:
    """All coordinate permutations and sign changes of the seed points."""
    out = set()
    for s in seeds:
        for p in permutations(s):
            for signs in product((1, -1), repeat=len(p)):
                out.add(tuple(Fraction(a) * e for a, e in zip(p, signs)))
    return sorted(out)


G_SEEDS = [(8, 5), (7, 7)]
G_POLAR_SEEDS = [(Fraction(1, 8), 0), (Fraction(2, 21), Fraction(1, 21))]

# the balanced quadrilaterals, vertices in the order a, b, c, d and e, f, g, h
QUAD_P1 = [(4, 1), (4, -1), (-4, -1), (-4, 1)]
QUAD_P2 = [(4, -2), (2, 2), (-1, 3), (-3, -3)]
# a->f, b->e, c->h, d->g as vertex indices of QUAD_P2
QUAD_MATCH = [1, 0, 3, 2]

# unbalance datum for G: the edge between (8,5) and (7,7)
G_EDGE = ((8, 5), (7, 7))

G_UNBALANCE_MATRIX = [
    [-10, -5, 16, 8, -5, 8],
    [8, 16, -5, -10, 8, -5],
    [8, -16, 5, -10, 8, 5],
    [-10, 5, -16, 8, 5, 8],
    [-10, -5, 16, 8, 5, -8],
    [8, 16, -5, -10, -8, 5],
    [8, -16, 5, -10, -8, -5],
    [-10, 5, -16, 8, -5, -8],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
]
G_CERTIFICATE = [1, 1, 1, 1, 1, 1, 1, 1, 8, 8]


def dodecagon() -> VPolytope:
    return hull(signed_permutations(G_SEEDS))


def square(r=1) -> VPolytope:
    return hull([(r, r), (-r, r), (-r, -r), (r, -r)])


def centered_cube(d: int = 3) -> VPolytope:
    return unit_cube(d, -1, 1)


def segment() -> VPolytope:
    return hull([(-1,), (1,)])


def quad_p1() -> VPolytope:
    return hull(QUAD_P1)


def quad_p2() -> VPolytope:
    return hull(QUAD_P2)


def quad_identification(P1: VPolytope | None = None, P2: VPolytope | None = None) -> list:
    P1 = P1 or quad_p1()
    P2 = P2 or quad_p2()
    i1 = [P1.vertices.index(tuple(map(Fraction, v))) for v in QUAD_P1]
    i2 = [P2.vertices.index(tuple(map(Fraction, v))) for v in QUAD_P2]
    vmap = {i1[k]: i2[QUAD_MATCH[k]] for k in range(4)}
    return vertex_identification(P1, P2, vmap)


def centrally_symmetric_hexagon() -> VPolytope:
    return hull([(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)])


def anchor_polygons(alpha) -> dict:
    """Truncated unit squares for a rational alpha in (0, 1).

    "pentagon": [0,1]^2 cut at (1,1) by the line through (1,alpha), (alpha,1).
    "octagon": [0,1]^2 with (1,0) and (0,1) each cut by lines of slope alpha and 1.
    "enneagon": the octagon also cut by the pentagon's line.
    Vertices are listed counterclockwise from the origin.
    """
    al = Fraction(alpha)
    if not 0 < al < 1:
        raise ValueError("alpha must lie in (0, 1)")
    a = al * (1 + al) / 4
    b = al * al / 2
    u = (al * a - b) / (1 - al)
    P = (1 + u, al * (u + a))
    corner_lo = [(1 - a, Fraction(0)), P, (Fraction(1), b)]
    corner_hi = [(1 - x, 1 - y) for x, y in corner_lo]
    zero, one = Fraction(0), Fraction(1)
    octagon = [(zero, zero)] + corner_lo + [(one, one)] + corner_hi
    pentagon = [(zero, zero), (one, zero), (one, al), (al, one), (zero, one)]
    enneagon = [(zero, zero)] + corner_lo + [(one, al), (al, one)] + corner_hi
    return {"pentagon": pentagon, "octagon": octagon, "enneagon": enneagon}
