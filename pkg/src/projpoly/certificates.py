"""The strict system certifying that a square-symmetric polygon cannot be balanced."""
from __future__ import annotations

from fractions import Fraction

from . import linalg as la
from .geometry import VPolytope
from .lp import StrictSystem, check_certificate, decide_strict  # noqa: F401  (re-exported)

# the reflection group of the unit square, in a fixed order
SQUARE_GROUP = [
    ((1, 0), (0, 1)),
    ((0, 1), (1, 0)),
    ((0, -1), (1, 0)),
    ((-1, 0), (0, 1)),
    ((-1, 0), (0, -1)),
    ((0, -1), (-1, 0)),
    ((0, 1), (-1, 0)),
    ((1, 0), (0, -1)),
]
PARAMETERS = ("a", "b", "c", "d", "s", "t")


class SymmetryError(ValueError):
    pass


def _apply(g, v):
    return [g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1]]


def _inverse(g):
    return tuple(tuple(r) for r in la.inverse([list(r) for r in g]))


def is_square_symmetric(P: VPolytope) -> bool:
    verts = set(P.vertices)
    return all(tuple(la.vec(_apply(g, v))) in verts for g in SQUARE_GROUP for v in P.vertices)


def _det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _edge_datum(P: VPolytope, edge):
    """(u_lo, u_hi, w): edge endpoints ordered counterclockwise and the primitive polar vertex."""
    if edge is None:
        from .predicates import perfectly_centered
        ok, wit = perfectly_centered(P)
        edges = [w.face for w in wit if len(w.face) == 2]
        if not edges:
            return None
        face = min(edges)
    elif all(isinstance(i, int) for i in edge):
        face = tuple(sorted(edge))
    else:
        face = tuple(sorted(P.vertices.index(tuple(la.vec(p))) for p in edge))
    fid = P.lattice.id_of(face)
    if P.lattice.rank[fid] != 1:
        raise ValueError("datum must be an edge")
    p, q = (la.vec(P.vertices[i]) for i in face)
    if _det(p, q) < 0:
        p, q = q, p
    F = P.facets[P.facets_containing(fid)[0]].halfspace
    w = list(la.primitive(la.scale(1 / F.offset, list(F.normal))))
    return p, q, w


def _conjugate_image(g, w):
    """Coefficient columns of tau = g(A g^-1 w + (s, t)) in the parameters a..t."""
    gi = _inverse(g)
    x = _apply(gi, w)
    cols = []
    for k in range(6):
        A = [[0, 0], [0, 0]]
        st = [0, 0]
        if k < 4:
            A[k // 2][k % 2] = 1
        else:
            st[k - 4] = 1
        y = [A[0][0] * x[0] + A[0][1] * x[1] + st[0], A[1][0] * x[0] + A[1][1] * x[1] + st[1]]
        cols.append(_apply(g, y))
    return cols


def unbalance_system(P: VPolytope, edge=None) -> StrictSystem:
    """Strict system in (a, b, c, d, s, t) for an affine T balancing P with itself.

    T(x) = [[a, b], [c, d]] x + (s, t) acts on the polar. For each of the
    8 square symmetries g, the image g T g^-1 (w) of the edge's polar
    vertex w must lie strictly on the inner side of the endpoint ray that
    w fails to clear; the sign rows a > 0 and d > 0 close the system.
    ``edge`` picks the failing edge (vertex indices or coordinates);
    by default the first edge that violates perfect centering.
    """
    if P.ambient != 2 or P.dim != 2:
        raise ValueError("unbalance_system expects a polygon")
    if not P.is_centered():
        raise ValueError("polygon must be centered")
    if not is_square_symmetric(P):
        raise SymmetryError("polygon is not invariant under the square's reflection group")
    rows, names = [], []
    datum = _edge_datum(P, edge)
    if datum is not None:
        p, q, w = datum
        if _det(p, w) <= 0:
            side, sign = p, 1       # tau must turn past the ray through p
        elif _det(w, q) <= 0:
            side, sign = q, -1      # tau must stay before the ray through q
        else:
            side = None
        if side is not None:
            for gi, g in enumerate(SQUARE_GROUP):
                cols = _conjugate_image(g, w)
                rows.append([sign * _det(side, c) for c in cols])
                names.append(f"slope[g{gi}]")
    rows.append([1, 0, 0, 0, 0, 0])
    names.append("a>0")
    rows.append([0, 0, 0, 1, 0, 0])
    names.append("d>0")
    return StrictSystem(rows, names)
