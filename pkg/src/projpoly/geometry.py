"""Exact polytope geometry: hulls, face lattices, polars, cones and fans.

Hulls are computed by the double description method in integer
arithmetic, inside the affine hull of the input. Faces are labelled by
the sorted tuple of their vertex indices; vertex order follows the input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg as la
from .lp import strictly_feasible
from .poset import FaceLattice

POINT_LIMIT = 2000


class GeometryError(ValueError):
    pass


# double description


def _popcount(x: int) -> int:
    return bin(x).count("1")


def dd_extreme_rays(rows: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {y : r.y >= 0} for integer rows.

    Requires the rows to have rank ``dim``. Adjacency is decided
    combinatorially from zero sets.
    """
    rows = [list(r) for r in rows]
    sel = la.independent_subset(rows)
    if len(sel) != dim:
        raise GeometryError("cone is not pointed")
    S = sel
    Minv = la.inverse([rows[i] for i in S])
    rays = [list(la.primitive([Minv[r][j] for r in range(dim)])) for j in range(dim)]
    full = 0
    for i in S:
        full |= 1 << i
    zmask = [full & ~(1 << S[j]) for j in range(dim)]
    sset = set(S)
    for i, row in enumerate(rows):
        if i in sset:
            continue
        vals = [sum(a * b for a, b in zip(row, r)) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = []
        new_masks = []
        for p in pos:
            for q in neg:
                Z = zmask[p] & zmask[q]
                if _popcount(Z) < dim - 2:
                    continue
                if any(t != p and t != q and (zmask[t] & Z) == Z for t in range(len(rays))):
                    continue
                vp, vq = vals[p], -vals[q]
                r = [vp * a + vq * b for a, b in zip(rays[q], rays[p])]
                new_rays.append(list(la.primitive(r)))
                new_masks.append(Z | (1 << i))
        bit = 1 << i
        rays2 = [rays[k] for k in pos] + [rays[k] for k in zer] + new_rays
        masks2 = [zmask[k] for k in pos] + [zmask[k] | bit for k in zer] + new_masks
        rays, zmask = rays2, masks2
    return [tuple(r) for r in rays]


def cone_from_hrep(ineqs: Sequence, eqs: Sequence, n: int) -> "Cone":
    """V-representation of {y : A y >= 0, E y = 0} in Q^n."""
    ineqs = [la.vec(r) for r in ineqs if not la.is_zero(la.vec(r))]
    eqs = [la.vec(r) for r in eqs if not la.is_zero(la.vec(r))]
    if eqs:
        N = la.nullspace(eqs)  # list of basis vectors of the solution space
    else:
        N = la.identity(n)
    m = len(N)
    if m == 0:
        return Cone([], [], n)
    # inequalities in z coordinates, y = sum z_j N_j
    Iz = [[la.dot(r, Nj) for Nj in N] for r in ineqs]
    Iz = [r for r in Iz if not la.is_zero(r)]
    lin_z = la.nullspace(Iz) if Iz else la.identity(m)
    lineality = [_combine(N, z) for z in lin_z]
    if not Iz:
        return Cone([], lineality, n)
    Q = la.row_basis(Iz)  # rows spanning the orthogonal complement of lin_z
    k = len(Q)
    W = [[la.dot(r, q) for q in Q] for r in Iz]
    Wint = [la.integer_row(r) for r in W]
    rays_w = dd_extreme_rays(Wint, k)
    gens = []
    for w in rays_w:
        z = [sum((Fraction(w[j]) * Q[j][t] for j in range(k)), Fraction(0)) for t in range(m)]
        gens.append(_combine(N, z))
    return Cone(gens, lineality, n)


def _combine(basis, coeffs):
    n = len(basis[0])
    out = [Fraction(0)] * n
    for c, b in zip(coeffs, basis):
        if c:
            for i in range(n):
                out[i] += c * b[i]
    return out


# cones


@dataclass
class Cone:
    """cone(generators) + span(lineality) in Q^ambient."""

    generators: list
    lineality: list
    ambient: int

    def __post_init__(self):
        self.generators = [la.vec(g) for g in self.generators]
        self.lineality = [la.vec(g) for g in self.lineality]

    @property
    def dim(self) -> int:
        vs = self.generators + self.lineality
        return la.rank(vs) if vs else 0

    def span(self) -> list:
        vs = self.generators + self.lineality
        return la.row_basis(vs) if vs else []

    def relint_point(self):
        p = [Fraction(0)] * self.ambient
        for g in self.generators:
            p = la.add(p, g)
        return p

    def dual_hrep(self):
        """Generators of the dual cone {y : <y,x> >= 0 on this cone}."""
        eqs = [list(v) for v in self.lineality]
        return cone_from_hrep(self.generators, eqs, self.ambient)

    def hrep(self) -> tuple[list, list]:
        """(inequalities a with a.x >= 0, equations) describing the cone."""
        D = self.dual_hrep()
        return D.generators, D.lineality

    def canonical(self) -> tuple:
        """Extreme rays modulo lineality (primitive, sorted) and the lineality rref."""
        ineqs, eqs = self.hrep()
        again = cone_from_hrep(ineqs, eqs, self.ambient)
        lin = [tuple(r) for r in la.row_basis(again.lineality)] if again.lineality else []
        gens = {la.primitive(_project_out(g, lin)) for g in again.generators}
        return tuple(sorted(gens)), tuple(lin)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return self.ambient == other.ambient and self.canonical() == other.canonical()

    def contains(self, x) -> bool:
        ineqs, eqs = self.hrep()
        x = la.vec(x)
        return all(la.dot(a, x) >= 0 for a in ineqs) and all(la.dot(e, x) == 0 for e in eqs)

    def intersect(self, other: "Cone") -> "Cone":
        i1, e1 = self.hrep()
        i2, e2 = other.hrep()
        return cone_from_hrep(i1 + i2, e1 + e2, self.ambient)

    def labl(self) -> FaceLattice:
        """Face lattice of a pointed cone, faces labelled by generator indices."""
        if self.lineality:
            raise GeometryError("face lattice requested for a cone with lineality")
        pts = [tuple(g) for g in self.generators]
        ineqs, eqs = self.hrep()
        masks = []
        for a in ineqs:
            masks.append(tuple(i for i, g in enumerate(pts) if la.dot(a, g) == 0))
        return _closure_lattice(masks, len(pts), with_zero=True)


def _project_out(v, basis):
    """Orthogonal projection of v onto the complement of span(basis)."""
    if not basis:
        return la.vec(v)
    G = [[la.dot(a, b) for b in basis] for a in basis]
    rhs = [la.dot(a, v) for a in basis]
    c = la.solve(G, rhs)
    out = la.vec(v)
    for ci, b in zip(c, basis):
        out = la.sub(out, la.scale(ci, b))
    return out


def relint_meet(C1: Cone, C2: Cone) -> bool:
    """Do the relative interiors of two cones intersect?"""
    g1, l1, g2, l2 = C1.generators, C1.lineality, C2.generators, C2.lineality
    n = C1.ambient
    k = len(g1) + len(g2)
    nvar = k + len(l1) + len(l2)
    if nvar == 0:
        return True
    eq = []
    for i in range(n):
        eq.append([v[i] for v in g1] + [-v[i] for v in g2] + [v[i] for v in l1] + [-v[i] for v in l2])
    strict = [[Fraction(int(i == j)) for j in range(nvar)] for i in range(k)]
    if not strict:
        return True
    return strictly_feasible(strict, eq) is not None


# half-spaces and polytopes


@dataclass(frozen=True)
class HalfSpace:
    """{x : <normal, x> <= offset}."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(la.vec(self.normal)))
        object.__setattr__(self, "offset", la.frac(self.offset))
        if la.is_zero(self.normal):
            raise GeometryError("half-space normal must be nonzero")

    def value(self, x) -> Fraction:
        return la.dot(self.normal, x) - self.offset

    def contains(self, x) -> bool:
        return self.value(x) <= 0

    def on_boundary(self, x) -> bool:
        return self.value(x) == 0

    def strictly_contains(self, x) -> bool:
        return self.value(x) < 0


@dataclass
class Facet:
    vertices: tuple  # vertex indices
    halfspace: HalfSpace  # ambient, normal inside the linear span of the affine hull
    local: tuple  # (a0, a) with a0 + a.q >= 0 in local coordinates


class VPolytope:
    """conv(vertices) with its exact face lattice.

    ``facets`` are sorted by vertex tuple; ``lattice`` labels faces by
    sorted vertex index tuples.
    """

    def __init__(self, vertices, facets, origin, basis, pivots, lattice, ambient):
        self.vertices = [tuple(v) for v in vertices]
        self.facets: list[Facet] = facets
        self.origin = origin
        self.basis = basis
        self.pivots = pivots
        self.lattice: FaceLattice = lattice
        self.ambient = ambient
        self._eqs = None

    @property
    def dim_ambient(self) -> int:
        return self.ambient

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def nverts(self) -> int:
        return len(self.vertices)

    def __repr__(self):
        return f"VPolytope(dim={self.dim}, ambient={self.ambient}, f={self.lattice.f_vector()})"

    @property
    def facet_halfspaces(self) -> dict:
        return {self.lattice.id_of(f.vertices): f.halfspace for f in self.facets}

    def equations(self) -> list[tuple[list, Fraction]]:
        """(w, c) with <w, x> = c on the affine hull."""
        if self._eqs is None:
            if self.dim == self.ambient:
                self._eqs = []
            else:
                ws = la.orthogonal_complement(self.basis, self.ambient) if self.basis else la.identity(self.ambient)
                self._eqs = [(w, la.dot(w, self.origin)) for w in ws]
        return self._eqs

    def label(self, f: int):
        return self.lattice.labels[f]

    def face_id(self, vertex_indices) -> int:
        return self.lattice.id_of(tuple(sorted(vertex_indices)))

    def face_vertex_indices(self, f: int) -> tuple:
        return self.lattice.labels[f]

    def face_vertices(self, f: int) -> list:
        return [self.vertices[i] for i in self.lattice.labels[f]]

    def top(self) -> int:
        return self.lattice.top

    def facets_containing(self, f: int) -> list[int]:
        s = set(self.lattice.labels[f])
        return [i for i, F in enumerate(self.facets) if s <= set(F.vertices)]

    def smallest_face(self, vertex_indices) -> int:
        s = set(vertex_indices)
        inter = set(range(self.nverts))
        for F in self.facets:
            if s <= set(F.vertices):
                inter &= set(F.vertices)
        return self.face_id(inter)

    def barycenter(self, f: int | None = None):
        vs = self.vertices if f is None else self.face_vertices(f)
        n = len(vs)
        return [sum((v[i] for v in vs), Fraction(0)) / n for i in range(self.ambient)]

    def local_coords(self, x) -> list[Fraction]:
        d = la.sub(la.vec(x), self.origin)
        return [d[p] for p in self.pivots]

    def in_affine_hull(self, x) -> bool:
        return all(la.dot(w, x) == c for w, c in self.equations())

    def contains(self, x) -> bool:
        x = la.vec(x)
        if not self.in_affine_hull(x):
            return False
        return all(F.halfspace.contains(x) for F in self.facets) if self.dim > 0 else tuple(x) == self.vertices[0]

    def interior_contains(self, x) -> bool:
        """x in the relative interior."""
        x = la.vec(x)
        if not self.in_affine_hull(x):
            return False
        if self.dim == 0:
            return tuple(x) == self.vertices[0]
        return all(F.halfspace.strictly_contains(x) for F in self.facets)

    def is_centered(self) -> bool:
        return self.dim == self.ambient and self.interior_contains([0] * self.ambient)

    def f_vector(self):
        return self.lattice.f_vector()

    def normal_cone(self, f: int) -> Cone:
        """Outer normal cone; lineality covers the complement of the affine hull."""
        if f == self.lattice.bottom:
            return Cone([], la.identity(self.ambient), self.ambient)
        gens = [list(self.facets[i].halfspace.normal) for i in self.facets_containing(f)]
        lin = [list(w) for w, _ in self.equations()]
        return Cone(gens, lin, self.ambient)

    def cone_over_face(self, f: int) -> Cone:
        return Cone([list(v) for v in self.face_vertices(f)], [], self.ambient)

    def maximizer_face(self, c) -> int:
        vals = [la.dot(c, v) for v in self.vertices]
        m = max(vals)
        return self.smallest_face([i for i, v in enumerate(vals) if v == m])

    def tangent_cone(self, f: int) -> Cone:
        """Cone of directions from a relative interior point of face f into P."""
        p = self.barycenter(f)
        gens = [la.sub(v, p) for v in self.vertices]
        return Cone(gens, [], self.ambient)


def _closure_lattice(facet_sets: Sequence[tuple], nverts: int, with_zero: bool = False) -> FaceLattice:
    """Face lattice from facet vertex sets by intersection closure.

    For cones (``with_zero``), the apex is the bottom and is labelled ().
    """
    fmasks = []
    for s in facet_sets:
        m = 0
        for v in s:
            m |= 1 << v
        fmasks.append(m)
    full = (1 << nverts) - 1
    faces = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for S in frontier:
            for F in fmasks:
                T = S & F
                if T != S and T not in faces:
                    faces.add(T)
                    nxt.append(T)
        frontier = nxt
    faces.add(0)
    order = sorted(faces, key=lambda m: (_popcount(m), m))
    pos = {m: i for i, m in enumerate(order)}
    covers = []
    for S in order:
        if S == 0:
            continue
        subs = {S & F for F in fmasks if S & F != S}
        if not subs:
            subs = {0}
        maximal = [T for T in subs if not any(U != T and U & T == T for U in subs)]
        for T in maximal:
            covers.append((pos[T], pos[S]))
    labels = [tuple(i for i in range(nverts) if (m >> i) & 1) for m in order]
    return FaceLattice(labels, covers)


def hull(points: Iterable) -> VPolytope:
    """Exact convex hull; vertices keep their first-seen input order."""
    pts = []
    seen = set()
    for p in points:
        t = tuple(la.vec(p))
        if t not in seen:
            seen.add(t)
            pts.append(t)
    if not pts:
        raise GeometryError("hull of an empty point set")
    if len(pts) > POINT_LIMIT:
        raise GeometryError(f"more than {POINT_LIMIT} points")
    n = len(pts[0])
    origin = list(pts[0])
    dirs = [la.sub(p, origin) for p in pts[1:]]
    dirs = [d for d in dirs if not la.is_zero(d)]
    basis, pivots = la.rref(dirs) if dirs else ([], [])
    k = len(basis)
    if k == 0:
        lat = FaceLattice([(), (0,)], [(0, 1)])
        return VPolytope([pts[0]], [], origin, [], [], lat, n)
    local = [[la.sub(p, origin)[c] for c in pivots] for p in pts]
    rows = [la.integer_row([Fraction(1)] + q) for q in local]
    rays = dd_extreme_rays(rows, k + 1)
    # vertices: points whose tight facet normals have rank k
    tight = [[r for r in rays if sum(a * b for a, b in zip(r, row)) == 0] for row in rows]
    is_vertex = [la.rank([list(r[1:]) for r in t]) == k if t else False for t in tight]
    keep = [i for i in range(len(pts)) if is_vertex[i]]
    newidx = {old: new for new, old in enumerate(keep)}
    verts = [pts[i] for i in keep]
    BBt = [[la.dot(a, b) for b in basis] for a in basis]
    facets = []
    for r in rays:
        vs = tuple(sorted(newidx[i] for i, row in enumerate(rows)
                          if i in newidx and sum(a * b for a, b in zip(r, row)) == 0))
        a = [Fraction(x) for x in r[1:]]
        # outer normal nu in span(basis) with <nu, b_j> = -a_j
        w = la.solve(BBt, [-x for x in a])
        nu = _combine(basis, w)
        off = la.dot(nu, verts[vs[0]])
        facets.append(Facet(vs, HalfSpace(tuple(nu), off), (Fraction(r[0]), tuple(a))))
    facets.sort(key=lambda F: F.vertices)
    lat = _closure_lattice([F.vertices for F in facets], len(verts))
    return VPolytope(verts, facets, origin, basis, pivots, lat, n)


def labl(P: VPolytope) -> FaceLattice:
    return P.lattice


def intersect_halfspaces(P: VPolytope, hs: Sequence[HalfSpace]) -> VPolytope:
    """P cut by half-spaces, by vertex enumeration of the homogenized cone."""
    n = P.ambient
    ineqs = []
    for F in P.facets:
        ineqs.append([F.halfspace.offset] + [-x for x in F.halfspace.normal])
    for h in hs:
        ineqs.append([h.offset] + [-x for x in h.normal])
    ineqs.append([Fraction(1)] + [Fraction(0)] * n)
    eqs = [[-c] + list(w) for w, c in P.equations()]
    if P.dim == 0:
        eqs = [[-x] + [Fraction(int(i == j)) for j in range(n)] for i, x in enumerate(P.vertices[0])]
    C = cone_from_hrep(ineqs, eqs, n + 1)
    if C.lineality:
        raise GeometryError("intersection is unbounded")
    pts = [[g[i] / g[0] for i in range(1, n + 1)] for g in C.generators if g[0] > 0]
    if not pts:
        raise GeometryError("intersection is empty")
    return hull(pts)


def from_halfspaces(hs: Sequence[HalfSpace], n: int) -> VPolytope:
    ineqs = [[h.offset] + [-x for x in h.normal] for h in hs]
    ineqs.append([Fraction(1)] + [Fraction(0)] * n)
    C = cone_from_hrep(ineqs, [], n + 1)
    pts = [[g[i] / g[0] for i in range(1, n + 1)] for g in C.generators if g[0] > 0]
    if not pts or any(g[0] == 0 for g in C.generators) or C.lineality:
        raise GeometryError("half-spaces do not bound a nonempty polytope")
    return hull(pts)


def polar(P: VPolytope) -> VPolytope:
    """Polar dual; its i-th vertex comes from the i-th facet of P."""
    if not P.is_centered():
        raise GeometryError("polar needs the origin in the interior")
    verts = [la.scale(1 / F.halfspace.offset, list(F.halfspace.normal)) for F in P.facets]
    Q = hull(verts)
    if Q.nverts != len(P.facets):
        raise GeometryError("polar vertex count mismatch")
    return Q


def polar_face(P: VPolytope, f: int, Pstar: VPolytope) -> int:
    """The face f* of polar(P) dual to face f of P."""
    return Pstar.face_id(P.facets_containing(f))


def convex_join(P0, P1) -> VPolytope:
    return hull(_verts(P0) + _verts(P1))


def lifted_join(P0, h0, P1, h1) -> VPolytope:
    h0, h1 = la.frac(h0), la.frac(h1)
    return hull([list(v) + [h0] for v in _verts(P0)] + [list(v) + [h1] for v in _verts(P1)])


def _verts(P):
    if isinstance(P, VPolytope):
        return [list(v) for v in P.vertices]
    return [list(la.vec(v)) for v in P]


def minkowski_sum(P0: VPolytope, P1: VPolytope) -> VPolytope:
    return hull([la.add(a, b) for a in P0.vertices for b in P1.vertices])


def translate(P: VPolytope, t) -> VPolytope:
    t = la.vec(t)
    return hull([la.add(v, t) for v in P.vertices])


def scale_polytope(P: VPolytope, c) -> VPolytope:
    c = la.frac(c)
    return hull([la.scale(c, list(v)) for v in P.vertices])


def linear_image(P: VPolytope, A) -> VPolytope:
    return hull([la.matvec(A, list(v)) for v in P.vertices])


def normal_cone(P: VPolytope, f: int) -> Cone:
    return P.normal_cone(f)


def cone_over_face(P: VPolytope, f: int) -> Cone:
    return P.cone_over_face(f)


# fans


@dataclass
class Fan:
    cones: dict
    ambient: int
    meta: dict = field(default_factory=dict)

    def labels(self):
        return list(self.cones)

    def label_poset(self) -> FaceLattice:
        """Cones ordered by inclusion, with a top adjoined above the maximal cones."""
        labs = list(self.cones)
        ineq = {l: self.cones[l].hrep() for l in labs}

        def inside(C, h):
            a, e = h
            vs = C.generators
            return (all(la.dot(r, g) >= 0 for r in a for g in vs) and all(la.dot(r, g) == 0 for r in e for g in vs)
                    and all(la.dot(r, g) == 0 for r in a + e for g in C.lineality))
        less = {i: [j for j in range(len(labs)) if j != i and inside(self.cones[labs[i]], ineq[labs[j]])]
                for i in range(len(labs))}
        covers = []
        for i in less:
            li = set(less[i])
            for j in less[i]:
                if not any(j in less[k] for k in li if k != j):
                    covers.append((i, j))
            if not less[i]:
                covers.append((i, len(labs)))
        return FaceLattice(labs + ["_full"], covers)


def _is_face_of(C: Cone, D: Cone) -> bool:
    """C is a face of D (both from the same fan, so containment suffices)."""
    if not all(D.contains(g) for g in C.generators):
        return False
    return all(D.contains(v) and D.contains(la.neg(v)) for v in C.lineality) and C.dim < D.dim


def normal_fan(P: VPolytope) -> Fan:
    L = P.lattice
    cones = {}
    for f in range(len(L)):
        if f == L.bottom:
            continue
        cones[L.labels[f]] = P.normal_cone(f)
    return Fan(cones, P.ambient)


def common_refinement(F1: Fan, F2: Fan) -> Fan:
    """Cells C1 & C2 over pairs whose relative interiors meet."""
    if F1.ambient != F2.ambient:
        raise GeometryError("fans live in different spaces")
    cones = {}
    info1 = {l: _relint_info(C) for l, C in F1.cones.items()}
    info2 = {l: _relint_info(C) for l, C in F2.cones.items()}
    for l1, C1 in F1.cones.items():
        for l2, C2 in F2.cones.items():
            quick = _quick_meet(C1, info1[l1], C2, info2[l2])
            if quick is False:
                continue
            I = C1.intersect(C2)
            if quick or relints_meet_via(I, info1[l1], info2[l2]):
                cones[(l1, l2)] = I
    return Fan(cones, F1.ambient)


def relints_meet_via(I: Cone, info1, info2) -> bool:
    """relint C1 and relint C2 meet iff a relint point of I = C1 & C2 lies in both."""
    p = I.relint_point()
    return _in_relint(p, info1) and _in_relint(p, info2)


def _relint_info(C: Cone):
    """(relint point, proper inequalities, equations) of a cone."""
    ineqs, eqs = C.hrep()
    vs = C.generators
    proper = [a for a in ineqs if any(la.dot(a, g) != 0 for g in vs)]
    return C.relint_point(), proper, eqs


def _in_relint(p, info) -> bool:
    _, proper, eqs = info
    return all(la.dot(e, p) == 0 for e in eqs) and all(la.dot(a, p) > 0 for a in proper)


def _separated(info, C: Cone) -> bool:
    """Some proper inequality of the first cone is <= 0 on all of C."""
    _, proper, _ = info
    return any(all(la.dot(a, g) <= 0 for g in C.generators) and all(la.dot(a, g) == 0 for g in C.lineality)
               for a in proper)


def _quick_meet(C1, i1, C2, i2):
    """Exact shortcuts for relint_meet; None when undecided."""
    if _in_relint(i1[0], i2) or _in_relint(i2[0], i1):
        return True
    if _separated(i1, C2) or _separated(i2, C1):
        return False
    return None


def minkowski_face_pairs(P0: VPolytope, P1: VPolytope, S: VPolytope | None = None) -> dict:
    """Map each face of P0+P1 to the pair of summand faces it decomposes into."""
    if S is None:
        S = minkowski_sum(P0, P1)
    out = {}
    for f in range(len(S.lattice)):
        if f == S.lattice.bottom:
            continue
        c = S.normal_cone(f).relint_point()
        out[S.lattice.labels[f]] = (P0.lattice.labels[P0.maximizer_face(c)],
                                    P1.lattice.labels[P1.maximizer_face(c)])
    return out


def fans_match(S: VPolytope, P0: VPolytope, P1: VPolytope) -> tuple[bool, list]:
    """nfan(P0+P1) against the common refinement, labels matched through summand faces."""
    R = common_refinement(normal_fan(P0), normal_fan(P1))
    pairs = minkowski_face_pairs(P0, P1, S)
    problems = []
    if set(pairs.values()) != set(R.cones):
        problems.append("label sets differ")
        return False, problems
    if len(set(pairs.values())) != len(pairs):
        problems.append("face pairs are not distinct")
    for lab, pr in pairs.items():
        if S.normal_cone(S.lattice.id_of(lab)) != R.cones[pr]:
            problems.append(f"cone mismatch at {pr}")
    return not problems, problems


# helpers used across modules


def unit_cube(d: int, lo=0, hi=1) -> VPolytope:
    from itertools import product as iproduct
    return hull([list(c) for c in iproduct([lo, hi], repeat=d)])


def simplex_points(d: int) -> list:
    pts = [[0] * d]
    for i in range(d):
        e = [0] * d
        e[i] = 1
        pts.append(e)
    return pts


def affine_equivalent_map(src: Sequence, dst: Sequence):
    """Affine map x -> Ax + b sending affinely independent src points to dst."""
    src = [la.vec(p) for p in src]
    dst = [la.vec(p) for p in dst]
    n = len(src[0])
    if len(src) != n + 1:
        raise GeometryError("need n+1 points")
    M = [list(p) + [Fraction(1)] for p in src]
    Minv = la.inverse(M)
    # rows: [A | b] satisfies [A b] [p;1] = q
    Q = [list(q) for q in dst]
    T = la.matmul(la.transpose(Q), la.transpose(Minv))
    A = [r[:n] for r in T]
    b = [r[n] for r in T]
    return A, b


def lp_interior_functional(P: VPolytope, p) -> tuple[list, Fraction] | None:
    """Affine functional l with l(p) = 0 and l > 0 on P, or None."""
    n = P.ambient
    p = la.vec(p)
    # l(x) = a.x + a0 ; a0 = -a.p ; need a.(v - p) >= s
    strict = [la.sub(list(v), p) for v in P.vertices]
    x = strictly_feasible(strict)
    if x is None:
        return None
    return x, -la.dot(x, p)
