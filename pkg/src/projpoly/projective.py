"""Projectivities, oriented projective points, flats, visibility, cross ratios."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .geometry import GeometryError, VPolytope, hull
from .lp import linprog, strictly_feasible


class Infinity:
    """The value at infinity of the projective line."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "oo"

    def __str__(self):
        return "oo"


INFINITY = Infinity()


@dataclass(frozen=True)
class OrientedPoint:
    """A point of oriented projective space, stored as a primitive integer homogeneous vector.

    [p;1] is the finite point p, -[p;1] is p^-, and [u;0] is the point at
    infinity in direction u.
    """

    h: tuple

    def __post_init__(self):
        v = la.vec(self.h)
        if la.is_zero(v):
            raise GeometryError("the zero vector is not a point")
        object.__setattr__(self, "h", la.primitive(v))

    @classmethod
    def finite(cls, p) -> "OrientedPoint":
        return cls(tuple(la.vec(p)) + (Fraction(1),))

    @classmethod
    def at_infinity(cls, u) -> "OrientedPoint":
        return cls(tuple(la.vec(u)) + (Fraction(0),))

    @property
    def dim(self) -> int:
        return len(self.h) - 1

    @property
    def is_finite(self) -> bool:
        return self.h[-1] != 0

    @property
    def sign(self) -> int:
        """+1 for p, -1 for p^-, 0 on the horizon."""
        return (self.h[-1] > 0) - (self.h[-1] < 0)

    def point(self) -> list[Fraction]:
        """Affine coordinates (of p for both p and p^-)."""
        if not self.is_finite:
            raise GeometryError("point at infinity has no affine coordinates")
        w = Fraction(self.h[-1])
        return [Fraction(x) / w for x in self.h[:-1]]

    def neg(self) -> "OrientedPoint":
        return OrientedPoint(tuple(-x for x in self.h))

    def hvec(self) -> list[Fraction]:
        return [Fraction(x) for x in self.h]

    def same_projective_point(self, other: "OrientedPoint") -> bool:
        return self.h == other.h or self.h == other.neg().h


def as_point(p, dim: int | None = None) -> OrientedPoint:
    if isinstance(p, OrientedPoint):
        return p
    return OrientedPoint.finite(p)


# projectivities


class Projectivity:
    """x -> (Ax + b) / (c.x + e) acting on homogeneous coordinates by M = [A b; c e]."""

    def __init__(self, matrix):
        M = la.mat(matrix)
        n = len(M)
        if any(len(r) != n for r in M):
            raise GeometryError("projectivity matrix must be square")
        if la.det(M) == 0:
            raise GeometryError("projectivity matrix is singular")
        e = M[-1][-1]
        if e != 0:
            M = [[x / e for x in r] for r in M]
        self.matrix = M

    @classmethod
    def from_parts(cls, A, b=None, c=None) -> "Projectivity":
        A = la.mat(A)
        d = len(A)
        b = la.vec(b) if b is not None else la.zeros(d)
        c = la.vec(c) if c is not None else la.zeros(d)
        M = [list(A[i]) + [b[i]] for i in range(d)] + [list(c) + [Fraction(1)]]
        return cls(M)

    @classmethod
    def identity(cls, d: int) -> "Projectivity":
        return cls(la.identity(d + 1))

    @property
    def d(self) -> int:
        return len(self.matrix) - 1

    def __eq__(self, other):
        if not isinstance(other, Projectivity):
            return NotImplemented
        return self.matrix == other.matrix

    def __repr__(self):
        return f"Projectivity({[[la.fmt(x) for x in r] for r in self.matrix]})"

    def apply_h(self, h) -> list[Fraction]:
        return la.matvec(self.matrix, la.vec(h))

    def denominator(self, x) -> Fraction:
        return la.dot(self.matrix[-1], list(la.vec(x)) + [Fraction(1)])

    def __call__(self, x):
        if isinstance(x, OrientedPoint):
            return OrientedPoint(tuple(self.apply_h(x.h)))
        h = self.apply_h(list(la.vec(x)) + [Fraction(1)])
        if h[-1] == 0:
            raise GeometryError("point is sent to the horizon")
        return [v / h[-1] for v in h[:-1]]

    def compose(self, other: "Projectivity") -> "Projectivity":
        """self after other."""
        return Projectivity(la.matmul(self.matrix, other.matrix))

    def inverse(self) -> "Projectivity":
        return Projectivity(la.inverse(self.matrix))

    def star(self) -> "Projectivity":
        """J M^T J with J = diag(-I, 1)."""
        d = self.d
        Mt = la.transpose(self.matrix)
        J = [Fraction(-1)] * d + [Fraction(1)]
        return Projectivity([[J[i] * Mt[i][j] * J[j] for j in range(d + 1)] for i in range(d + 1)])

    def polar_transform(self) -> "Projectivity":
        return self.star().inverse()

    def is_bounded_on(self, pts) -> bool:
        dens = [self.denominator(p) for p in pts]
        return all(x > 0 for x in dens) or all(x < 0 for x in dens)

    def preserves_orientation_on(self, pts) -> bool:
        return all(self.denominator(p) > 0 for p in pts)


def polar_transform(pi: Projectivity) -> Projectivity:
    return pi.polar_transform()


def apply_projectivity(pi: Projectivity, P: VPolytope) -> VPolytope:
    if not pi.is_bounded_on(P.vertices):
        raise GeometryError("projectivity is unbounded on the polytope")
    return hull([pi(v) for v in P.vertices])


# flats


class Flat:
    """A projective flat, as the span of homogeneous vectors (canonical rref basis)."""

    def __init__(self, vectors: Sequence, dim: int | None = None):
        vs = [la.vec(v) for v in vectors if not la.is_zero(la.vec(v))]
        if dim is None:
            if not vs:
                raise GeometryError("empty flat needs an explicit dimension")
            dim = len(vs[0]) - 1
        self.n = dim + 1
        self.basis = la.row_basis(vs) if vs else []

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def projective_dim(self) -> int:
        return self.rank - 1

    def __eq__(self, other):
        if not isinstance(other, Flat):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __repr__(self):
        return f"Flat(rank={self.rank}, basis={[[la.fmt(x) for x in b] for b in self.basis]})"

    def contains(self, x) -> bool:
        h = x.h if isinstance(x, OrientedPoint) else la.vec(x)
        return la.in_span(la.vec(h), self.basis)

    def join(self, other: "Flat") -> "Flat":
        return Flat(self.basis + other.basis, self.n - 1)

    def meet(self, other: "Flat") -> "Flat":
        pa = la.orthogonal_complement(self.basis, self.n)
        pb = la.orthogonal_complement(other.basis, self.n)
        rows = pa + pb
        return Flat(la.nullspace(rows) if rows else la.identity(self.n), self.n - 1)

    def as_point(self) -> OrientedPoint:
        if self.rank != 1:
            raise GeometryError(f"flat has rank {self.rank}, not a point")
        return OrientedPoint(tuple(self.basis[0]))

    def affine_directions(self) -> list:
        """Basis of span intersected with the horizon hyperplane, without the last coordinate."""
        m = self.meet(Flat(la.identity(self.n)[:-1], self.n - 1))
        return [b[:-1] for b in m.basis]


def flat_join(a: Flat, b: Flat) -> Flat:
    return a.join(b)


def flat_meet(a: Flat, b: Flat) -> Flat:
    return a.meet(b)


def projective_closure(X) -> Flat:
    """Smallest flat containing a set of points or a polytope."""
    if isinstance(X, VPolytope):
        pts = [OrientedPoint.finite(v) for v in X.vertices]
    else:
        pts = [as_point(p) for p in X]
    return Flat([p.h for p in pts])


def horizon(d: int) -> Flat:
    return Flat(la.identity(d + 1)[:-1], d)


def line_through(p, q) -> Flat:
    return projective_closure([p, q])


# cross ratio


def cross_ratio(p, p1, p0, p_inf):
    """(p, p1 | p0, p_inf): the image of p under the projectivity sending p0, p1, p_inf to 0, 1, oo."""
    pts = [as_point(x) for x in (p, p1, p0, p_inf)]
    H = [x.hvec() for x in pts]
    if la.rank(H) != 2:
        raise GeometryError("cross ratio needs four collinear points")
    hp, h1, h0, hi = H
    if la.rank([h0, hi]) != 2 or la.rank([h0, h1]) != 2 or la.rank([h1, hi]) != 2:
        raise GeometryError("p0, p1, p_inf must be distinct")
    B = la.transpose([h0, hi])
    a, b = la.solve(B, hp)
    a1, b1 = la.solve(B, h1)
    if a == 0:
        return INFINITY
    return (b * a1) / (a * b1)


def cross_ratio_float(p, p1, p0, p_inf) -> float:
    """Floating-point oracle for irrational configurations (finite points only)."""
    def coords(x):
        return [float(t) for t in x] + [1.0]
    hp, h1, h0, hi = map(coords, (p, p1, p0, p_inf))

    def solve2(x):
        # least squares for x = a h0 + b hi
        g00 = sum(u * u for u in h0)
        g01 = sum(u * v for u, v in zip(h0, hi))
        g11 = sum(v * v for v in hi)
        r0 = sum(u * w for u, w in zip(h0, x))
        r1 = sum(v * w for v, w in zip(hi, x))
        det = g00 * g11 - g01 * g01
        return (r0 * g11 - r1 * g01) / det, (g00 * r1 - g01 * r0) / det
    a, b = solve2(hp)
    a1, b1 = solve2(h1)
    if abs(a) < 1e-300:
        return math.inf
    return (b * a1) / (a * b1)


def regular_pentagon_cross_ratio() -> float:
    """(a,b|c,d) on the chord of a regular pentagon cut by two diagonals from the opposite vertex."""
    v = [(math.cos(math.radians(90 + 72 * i)), math.sin(math.radians(90 + 72 * i))) for i in range(5)]

    def meet(p, q, r, s):
        x1, y1 = p
        x2, y2 = q
        x3, y3 = r
        x4, y4 = s
        den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
        t = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den
        return (x1 + t * (x2 - x1), y1 + t * (y2 - y1))
    a = v[1]
    d = v[4]
    b = meet(v[1], v[4], v[0], v[2])
    c = meet(v[1], v[4], v[0], v[3])
    return cross_ratio_float(a, b, c, d)


# visibility


def _obscured(h, P: VPolytope, f: int) -> bool:
    """Does the open cone r1 h + r2 face([P;1], f) meet the cone over [P;1]?

    By homogeneity the strictly positive weights may be taken >= 1, which
    turns the question into a phase-1 feasibility problem.
    """
    face = [list(v) + [Fraction(1)] for v in P.face_vertices(f)]
    allv = [list(v) + [Fraction(1)] for v in P.vertices]
    n = len(h)
    # r1 h + sum lam_i face_i - sum mu_j v_j = 0 with r1, lam >= 1, mu >= 0
    A_eq, b_eq = [], []
    for i in range(n):
        A_eq.append([h[i]] + [v[i] for v in face] + [-v[i] for v in allv])
        b_eq.append(-h[i] - sum((v[i] for v in face), Fraction(0)))
    res = linprog([0] * (1 + len(face) + len(allv)), A_eq=A_eq, b_eq=b_eq)
    return res.status == "optimal"


def visibility(p, P: VPolytope, f: int) -> str:
    """One of '*', '+', '-', '0' for front/back visibility of face f from p."""
    p = as_point(p)
    if p.dim != P.ambient:
        raise GeometryError("point and polytope live in different dimensions")
    if p.is_finite and P.contains(p.point()):
        raise GeometryError("visibility is undefined for points of the polytope")
    if f == P.lattice.bottom:
        return "*"
    h = p.hvec()
    front = not _obscured(h, P, f)
    back = not _obscured(la.neg(h), P, f)
    return {(True, True): "*", (True, False): "+", (False, True): "-", (False, False): "0"}[(front, back)]


def visibility_map(p, P: VPolytope) -> dict:
    """vis(p, P, f) for every face id f."""
    return {f: visibility(p, P, f) for f in range(len(P.lattice))}


NEG = {"*": "*", "0": "0", "+": "-", "-": "+"}


# flats and restriction


def restrict_to_flat(P: VPolytope, V: Flat | None = None, origin=None) -> VPolytope:
    """P in the coordinates of an affine flat V with the given origin.

    The basis of V's directions is the canonical rref basis, so the
    coordinate of a vector is read off at the pivot columns.
    """
    if V is None:
        V = projective_closure(P)
    if origin is None:
        origin = P.vertices[0]
    origin = la.vec(origin)
    if not V.contains(list(origin) + [Fraction(1)]):
        raise GeometryError("origin is not in the flat")
    dirs = V.affine_directions()
    R, piv = la.rref(dirs) if dirs else ([], [])
    out = []
    for v in P.vertices:
        if not V.contains(list(v) + [Fraction(1)]):
            raise GeometryError("polytope is not contained in the flat")
        d = la.sub(list(v), origin)
        out.append([d[c] for c in piv])
    return hull(out)


def embed_from_flat(Q: VPolytope, V: Flat, origin) -> VPolytope:
    dirs = V.affine_directions()
    R, _ = la.rref(dirs)
    origin = la.vec(origin)
    pts = []
    for q in Q.vertices:
        x = list(origin)
        for c, r in zip(q, R):
            x = la.add(x, la.scale(c, r))
        pts.append(x)
    return hull(pts)


def face_polytope(P: VPolytope, f: int, local: bool = True) -> VPolytope:
    """face(P, f) as a polytope, in its own affine coordinates when ``local``."""
    F = hull(P.face_vertices(f))
    if not local:
        return F
    return restrict_to_flat(F)


# projective equivalence


def projective_equivalence(P: VPolytope, Q: VPolytope, vertex_map: Sequence[int] | None = None,
                           tries: int = 8):
    """A projectivity sending vertex i of P to vertex vertex_map[i] of Q, positive on P.

    Both polytopes must be full-dimensional in spaces of equal dimension.
    Returns a Projectivity or None.
    """
    d = P.ambient
    if Q.ambient != d or P.dim != d or Q.dim != d or P.nverts != Q.nverts:
        return None
    if vertex_map is None:
        vertex_map = list(range(P.nverts))
    m = P.nverts
    n1 = d + 1
    nvar = n1 * n1 + m
    rows = []
    for i, v in enumerate(P.vertices):
        hp = list(v) + [Fraction(1)]
        hq = list(Q.vertices[vertex_map[i]]) + [Fraction(1)]
        for r in range(n1):
            row = [Fraction(0)] * nvar
            for c in range(n1):
                row[r * n1 + c] = hp[c]
            row[n1 * n1 + i] = -hq[r]
            rows.append(row)
    N = la.nullspace(rows)
    if not N:
        return None
    # coordinates t in the nullspace: lambda_i(t) > 0
    strict = [[b[n1 * n1 + i] for b in N] for i in range(m)]
    t = strictly_feasible(strict)
    if t is None:
        return None
    base = _combine_rows(N, t)
    for k in range(tries + 1):
        x = list(base)
        if k:
            # deterministic perturbation inside the positive region
            for j, b in enumerate(N):
                c = Fraction(1, (k + 2) * (j + 3) * 97)
                x = [xi + c * bi for xi, bi in zip(x, b)]
            if any(x[n1 * n1 + i] <= 0 for i in range(m)):
                continue
        M = [x[r * n1:(r + 1) * n1] for r in range(n1)]
        if la.det(M) != 0:
            return Projectivity(M)
    return None


def _combine_rows(basis, coeffs):
    out = [Fraction(0)] * len(basis[0])
    for c, b in zip(coeffs, basis):
        if c:
            out = [o + c * x for o, x in zip(out, b)]
    return out


def projectively_equivalent(P: VPolytope, Q: VPolytope, vertex_map=None) -> bool:
    return projective_equivalence(P, Q, vertex_map) is not None
