"""Balance, perfect centering, prismoid compatibility, antiprisms and frames."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import linalg as la
from .geometry import (GeometryError, VPolytope, common_refinement, hull, lifted_join,
                       normal_fan, polar, polar_face)
from .lp import positive_combination_meet
from .poset import (FaceLattice, PosetMap, abstract_antiprism, dual, find_isomorphism,
                    is_isomorphism, _refine_pair)
from .projective import INFINITY, Flat, OrientedPoint, cross_ratio, projective_closure


class PredicateError(ValueError):
    pass


# isomorphism enumeration, used when the identification is not given


def all_isomorphisms(L1: FaceLattice, L2: FaceLattice, limit: int = 10000) -> Iterator[list]:
    n = len(L1)
    if n != len(L2) or L1.f_vector() != L2.f_vector():
        return
    a = [(L1.rank[i], len(L1.up[i]), len(L1.down[i])) for i in range(n)]
    b = [(L2.rank[i], len(L2.up[i]), len(L2.down[i])) for i in range(n)]
    res = _refine_pair(L1, L2, a, b)
    if res is None:
        return
    count = 0
    stack = [(res[0], res[1], 0)]
    while stack:
        a, b, depth = stack.pop()
        classes: dict = {}
        for i, c in enumerate(a):
            classes.setdefault(c, []).append(i)
        if len(classes) == n:
            pos_b = {c: j for j, c in enumerate(b)}
            m = [pos_b[c] for c in a]
            if is_isomorphism(L1, L2, m):
                yield m
                count += 1
                if count >= limit:
                    return
            continue
        target = min((cl for cl in classes.values() if len(cl) > 1), key=lambda cl: (len(cl), cl[0]))
        x = target[0]
        fresh = ("ind", depth)
        branch = []
        for y in [j for j, c in enumerate(b) if c == a[x]]:
            a2, b2 = list(a), list(b)
            a2[x] = fresh
            b2[y] = fresh
            r = _refine_pair(L1, L2, a2, b2)
            if r is not None:
                branch.append((r[0], r[1], depth + 1))
        stack.extend(reversed(branch))


# balance


@dataclass
class BalanceReport:
    verdict: bool
    witnesses: list = field(default_factory=list)  # (g label, f label, reason)
    identification: list | None = None

    def __bool__(self):
        return self.verdict


def _identification(P1: VPolytope, P2: VPolytope, identification) -> list:
    L1, L2 = P1.lattice, P2.lattice
    if identification is None or identification == "labels":
        try:
            return [L2.id_of(lab) for lab in L1.labels]
        except Exception as exc:
            raise PredicateError("lattices cannot be identified by labels") from exc
    if isinstance(identification, PosetMap):
        m = list(identification.assignment)
    elif isinstance(identification, dict):
        m = [identification[i] for i in range(len(L1))]
    else:
        m = list(identification)
    if not is_isomorphism(L1, L2, m):
        raise PredicateError("identification is not a lattice isomorphism")
    return m


def _balance_pairs(P1: VPolytope, P2: VPolytope, m: list, stop_early: bool) -> list:
    L1 = P1.lattice
    ids = [x for x in L1.topological() if x != L1.bottom]
    normals = {g: [list(P1.facets[i].halfspace.normal) for i in P1.facets_containing(g)] for g in ids}
    faces = {f: [list(v) for v in P2.face_vertices(m[f])] for f in ids}
    out = []
    for g in ids:
        for f in ids:
            meets = positive_combination_meet(normals[g], faces[f]) is not None
            comparable = L1.leq(g, f)
            if meets != comparable:
                reason = "open cones meet but g is not below f" if meets else "g is below f but open cones are disjoint"
                out.append((L1.labels[g], P2.lattice.labels[m[f]], reason))
                if stop_early:
                    return out
    return out


def balanced(P1: VPolytope, P2: VPolytope, identification=None, stop_early: bool = False) -> BalanceReport:
    """bal(P1, P2) under a lattice identification.

    ``identification`` may be None (match labels), a PosetMap or list of
    target ids, or "auto" to try every lattice isomorphism until one
    balances.
    """
    for P in (P1, P2):
        if not P.is_centered():
            raise PredicateError("balance needs centered full-dimensional polytopes")
    if identification == "auto":
        first = None
        for m in all_isomorphisms(P1.lattice, P2.lattice):
            w = _balance_pairs(P1, P2, m, True)
            if not w:
                return BalanceReport(True, [], m)
            if first is None:
                first = m
        if first is None:
            raise PredicateError("polytopes are not combinatorially equivalent")
        return BalanceReport(False, _balance_pairs(P1, P2, first, stop_early), first)
    m = _identification(P1, P2, identification)
    w = _balance_pairs(P1, P2, m, stop_early)
    return BalanceReport(not w, w, m)


# perfect centering


@dataclass
class CenteringWitness:
    face: tuple
    vertices: list
    projection: list
    normal: list | None = None
    normal_slope: Fraction | None = None
    vertex_slopes: tuple | None = None


def orthogonal_projection(point, pts) -> list:
    """Orthogonal projection of ``point`` onto the affine hull of ``pts``."""
    pts = [la.vec(p) for p in pts]
    x0 = pts[0]
    D = la.row_basis([la.sub(p, x0) for p in pts[1:]]) if len(pts) > 1 else []
    y = la.sub(la.vec(point), x0)
    if not D:
        return list(x0)
    G = [[la.dot(a, b) for b in D] for a in D]
    t = la.solve(G, [la.dot(a, y) for a in D])
    out = list(x0)
    for ti, d in zip(t, D):
        out = la.add(out, la.scale(ti, d))
    return out


def _slope(v):
    return INFINITY if v[0] == 0 else Fraction(v[1]) / Fraction(v[0])


def perfectly_centered(P: VPolytope) -> tuple[bool, list]:
    """(verdict, witnesses); a witness is a face whose closest point to 0 leaves its relative interior."""
    if not P.is_centered():
        raise PredicateError("perfect centering is tested on centered full-dimensional polytopes")
    L = P.lattice
    out = []
    origin = [Fraction(0)] * P.ambient
    for f in L.topological():
        if f in (L.bottom, L.top):
            continue
        verts = P.face_vertices(f)
        q = orthogonal_projection(origin, verts)
        inside = True
        containing = set(P.facets_containing(f))
        for i, F in enumerate(P.facets):
            if i not in containing and not F.halfspace.strictly_contains(q):
                inside = False
                break
        if not inside:
            w = CenteringWitness(L.labels[f], verts, q)
            if P.ambient == 2 and len(verts) == 2:
                nrm = list(P.facets[next(iter(containing))].halfspace.normal)
                w.normal = nrm
                w.normal_slope = _slope(nrm)
                w.vertex_slopes = tuple(sorted((_slope(v) for v in verts), key=_slope_key))
            out.append(w)
    return not out, out


def _slope_key(s):
    return (1, 0) if s is INFINITY else (0, s)


# prismoids


@dataclass
class PrismoidSpec:
    """An abstract prismoid: all elements (f0, f1) as id pairs of the two bases."""

    base0: FaceLattice
    base1: FaceLattice
    sides: set

    def __post_init__(self):
        b0, b1 = self.base0, self.base1
        self.sides = set(self.sides)
        for f in range(len(b0)):
            self.sides.add((f, b1.bottom))
        for f in range(len(b1)):
            self.sides.add((b0.bottom, f))

    def true_sides(self) -> set:
        b0, b1 = self.base0.bottom, self.base1.bottom
        return {(x, y) for x, y in self.sides if (x == b0) == (y == b1)}

    def lattice(self) -> FaceLattice:
        from .poset import product, subposet
        Pr = product(self.base0, self.base1)
        n1 = len(self.base1)
        return subposet(Pr, [x * n1 + y for x, y in self.sides])

    def side_poset(self) -> FaceLattice:
        from .poset import product, subposet
        Pr = product(self.base0, self.base1)
        n1 = len(self.base1)
        return subposet(Pr, [x * n1 + y for x, y in self.true_sides()])


def prismoid_sides_from_polytope(P: VPolytope, base0: int, base1: int) -> tuple[PrismoidSpec, VPolytope, VPolytope]:
    """Read off the abstract prismoid of a geometric prismoid with given base faces.

    When both bases sit at constant last coordinate (as produced by
    lifted_join) that coordinate is dropped from the returned bases.
    """
    L = P.lattice
    v0 = set(L.labels[base0])
    v1 = set(L.labels[base1])
    if v0 & v1 or v0 | v1 != set(range(P.nverts)):
        raise PredicateError("faces are not bases of a prismoid")
    pts0, pts1 = P.face_vertices(base0), P.face_vertices(base1)
    if len({p[-1] for p in pts0}) == 1 and len({p[-1] for p in pts1}) == 1:
        # bases at fixed heights: compare them in the common hyperplane
        pts0 = [p[:-1] for p in pts0]
        pts1 = [p[:-1] for p in pts1]
    B0 = hull(pts0)
    B1 = hull(pts1)
    i0 = {old: new for new, old in enumerate(sorted(v0))}
    i1 = {old: new for new, old in enumerate(sorted(v1))}
    sides = set()
    for f in range(len(L)):
        s = set(L.labels[f])
        a = tuple(sorted(i0[v] for v in s & v0))
        b = tuple(sorted(i1[v] for v in s & v1))
        sides.add((B0.smallest_face(a) if a else B0.lattice.bottom,
                   B1.smallest_face(b) if b else B1.lattice.bottom))
    return PrismoidSpec(B0.lattice, B1.lattice, sides), B0, B1


def prismoid_compatible(B0: VPolytope, B1: VPolytope, spec: PrismoidSpec) -> bool:
    """Does the common refinement of nfan(B0), nfan(B1) dualize to the sides of the spec?

    Base faces are matched through labels, so the spec's base lattices
    must carry the same labels as labl(B0), labl(B1).
    """
    if B0.lattice.labels != spec.base0.labels or B1.lattice.labels != spec.base1.labels:
        raise PredicateError("base lattices do not match the spec")
    R = common_refinement(normal_fan(B0), normal_fan(B1))
    lab0, lab1 = B0.lattice.labels, B1.lattice.labels
    want = {(lab0[x], lab1[y]) for x, y in spec.true_sides()
            if x != spec.base0.bottom}
    if set(R.cones) != want:
        return False
    rp = dual(R.label_poset())
    sp = spec.side_poset()
    m = []
    for lab in sp.labels:
        if lab[0] == lab0[spec.base0.bottom]:
            m.append(rp.id_of("_full"))
        else:
            m.append(rp.id_of(lab))
    return is_isomorphism(sp, rp, m)


# antiprisms


def antiprism_of(P0: VPolytope, P1: VPolytope, identification=None) -> VPolytope:
    rep = balanced(P0, P1, identification)
    if not rep.verdict:
        raise PredicateError(f"pair is not balanced: {rep.witnesses[:3]}")
    A = lifted_join(P0, 0, polar(P1), 1)
    if find_isomorphism(A.lattice, abstract_antiprism(P0.lattice)) is None:
        raise PredicateError("antiprism lattice does not match the abstract antiprism")
    return A


# computational frames


@dataclass
class ComputationalFrame:
    line: Flat
    points: list  # p_i as OrientedPoint, i = 0..k-1
    edge_pairs: list
    values: dict = field(default_factory=dict)  # index -> cross ratio


def polygon_edges_ccw(P: VPolytope) -> list[tuple[int, int]]:
    """Edges of a polygon as vertex pairs in boundary order."""
    if P.dim != 2:
        raise PredicateError("polygon expected")
    L = P.lattice
    edges = [L.labels[e] for e in L.elements_of_rank(1)]
    adj: dict = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = 0
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [v for v in adj[cur] if v != prev]
        if prev is None:
            # go counterclockwise
            c = P.barycenter()
            cand = sorted(adj[cur])
            nxt = [v for v in cand if _cross(la.sub(P.vertices[cur], c), la.sub(P.vertices[v], c)) > 0]
        nv = nxt[0]
        if nv == start:
            break
        order.append(nv)
        prev, cur = cur, nv
    return [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def recognize_frame(P: VPolytope, anchors: dict | None = None, edges: Sequence | None = None):
    """Computational frame of a 2k-gon with opposite edges i, i+k, or None.

    ``anchors`` names the indices playing 0, 1 and oo, e.g.
    {"0": 0, "1": 2, "oo": 3}; values are then the cross ratios
    (p_i, p_1 | p_0, p_oo).
    """
    if P.dim != 2 or P.ambient != 2:
        raise PredicateError("recognize_frame expects a polygon in the plane")
    E = list(edges) if edges is not None else polygon_edges_ccw(P)
    if len(E) % 2:
        raise PredicateError("a frame needs an even number of edges")
    k = len(E) // 2
    pts = []
    for i in range(k):
        a = projective_closure([P.vertices[j] for j in E[i]])
        b = projective_closure([P.vertices[j] for j in E[i + k]])
        m = a.meet(b)
        if m.rank != 1:
            raise PredicateError("opposite edges are collinear")
        pts.append(m.as_point())
    line = Flat([p.h for p in pts])
    if line.rank > 2:
        return None
    frame = ComputationalFrame(line, pts, [(E[i], E[i + k]) for i in range(k)])
    if anchors:
        p0, p1, pinf = pts[anchors["0"]], pts[anchors["1"]], pts[anchors["oo"]]
        for i, p in enumerate(pts):
            frame.values[i] = cross_ratio(p, p1, p0, pinf)
    return frame


def vertex_identification(P1: VPolytope, P2: VPolytope, vertex_map) -> list:
    """Lattice ids of P2 matching those of P1 under a bijection of vertex indices."""
    L2 = P2.lattice
    return [L2.id_of(tuple(sorted(vertex_map[i] for i in lab))) for lab in P1.lattice.labels]


# faces inherit balance


@dataclass
class InheritanceReport:
    face: tuple
    antiprism_ok: bool
    copies_ok: bool  # F1~, F2~ projective copies of F1, F2
    balanced: bool
    pieces: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.antiprism_ok and self.copies_ok and self.balanced


def _interior_point(P: VPolytope, center: str):
    c = P.barycenter()
    if center == "barycenter":
        return c
    if center == "skewed":
        v = la.vec(P.vertices[0])
        return la.add(c, la.scale(Fraction(1, 3), la.sub(v, c)))
    raise PredicateError(f"unknown center rule {center!r}")


def _centered_local(P: VPolytope, f: int, center: str) -> VPolytope:
    from .geometry import translate
    from .projective import face_polytope
    F = face_polytope(P, f)
    return translate(F, la.neg(_interior_point(F, center)))


def _facet_index(P: VPolytope, vertex_set) -> int:
    vs = tuple(sorted(vertex_set))
    for i, F in enumerate(P.facets):
        if F.vertices == vs:
            return i
    raise PredicateError("vertex set is not a facet")


def _parallel_bases(Af: VPolytope, facet1: int, facet2: int):
    """A projectivity, positive on Af, placing two disjoint facets at last coordinate 0 and 1."""
    from itertools import combinations
    from .projective import Projectivity
    n = Af.ambient
    h1, h2 = Af.facets[facet1].halfspace, Af.facets[facet2].halfspace
    a1, b1 = list(h1.normal), h1.offset
    a2, b2 = list(h2.normal), h2.offset
    last = [-x for x in a1] + [b1]
    den = [-(x + y) for x, y in zip(a1, a2)] + [b1 + b2]
    for cols in combinations(range(n), n - 1):
        rows = [[Fraction(int(j == c)) for j in range(n)] + [Fraction(0)] for c in cols]
        M = rows + [last, den]
        if la.det(M) != 0:
            return Projectivity(M)
    raise PredicateError("no coordinate change separates the bases")


def face_inheritance(P1: VPolytope, P2: VPolytope, identification, f: int,
                     center: str = "barycenter") -> InheritanceReport:
    """Projective copies of face f of a balanced pair, read off a polar facet of the antiprism.

    A = [P1; 1] u [P2*; -1]. The face of A* dual to [face(P2*, f*); -1] is
    recentered and dualized to a polytope A_f whose bases F1~, F2~* are
    projective copies of face(P1, f) and the polar of face(P2, f). After a
    projectivity making the bases parallel, balance is evaluated on the
    recentered bases.
    """
    from .geometry import translate
    from .poset import lower_interval
    from .projective import face_polytope, projective_equivalence

    m = _identification(P1, P2, identification)
    L1, L2 = P1.lattice, P2.lattice
    if f == L1.top or L1.rank[f] < 1:
        raise PredicateError("face must be proper and at least one-dimensional")
    P2s = polar(P2)
    n1 = P1.nverts
    A = lifted_join(P1, 1, P2s, -1)
    fstar = polar_face(P2, m[f], P2s)
    phi = A.face_id(tuple(n1 + i for i in P2s.lattice.labels[fstar]))
    As = polar(A)
    Phi = polar_face(A, phi, As)
    Phi_loc = _centered_local(As, Phi, center)
    Af = polar(Phi_loc)
    phi_verts = As.lattice.labels[Phi]  # local vertex j of Phi is A facet phi_verts[j]

    # classify vertices of Af: (v, f*) for vertices v of F1, or (bot, g*) for g covered by f in P2
    kind = []
    for F in Phi_loc.facets:
        common = None
        for j in F.vertices:
            s = set(A.facets[phi_verts[j]].vertices)
            common = s if common is None else common & s
        low = sorted(i for i in common if i < n1)
        if low:
            if len(low) != 1:
                raise PredicateError("antiprism face has several base vertices")
            kind.append(("v", low[0]))
        else:
            kind.append(("g", frozenset(i - n1 for i in common)))
    top_idx = [k for k, t in enumerate(kind) if t[0] == "v"]
    bot_idx = [k for k, t in enumerate(kind) if t[0] == "g"]
    f1_face = Af.face_id(tuple(top_idx))
    f2s_face = Af.face_id(tuple(bot_idx))

    antiprism_ok = find_isomorphism(Af.lattice, abstract_antiprism(lower_interval(L1, f))) is not None

    F1 = face_polytope(P1, f)
    F2 = face_polytope(P2, m[f])
    f1_verts = list(L1.labels[f])
    f2_verts = list(L2.labels[m[f]])
    # P1 vertex -> P2 vertex through the identification
    vmap12 = {v: L2.labels[m[L1.id_of((v,))]][0] for v in f1_verts}

    Ft1 = face_polytope(Af, f1_face)
    to_p1 = [kind[k][1] for k in sorted(top_idx)]
    ok1 = projective_equivalence(Ft1, F1, [f1_verts.index(v) for v in to_p1]) is not None

    def p2_vertex_of(gstar_sets):
        # a facet of F2~* lists the P2* faces g*; their P2 faces meet in one vertex
        common = None
        for gs in gstar_sets:
            g = L2.labels[_dual_face(P2, P2s, gs)]
            common = set(g) if common is None else common & set(g)
        if len(common) != 1:
            raise PredicateError("facet of the dual base does not single out a vertex")
        return next(iter(common))

    Ft2s = _centered_local(Af, f2s_face, center)
    bot_sorted = sorted(bot_idx)
    Ft2 = polar(Ft2s) if Ft2s.dim >= 1 else Ft2s
    to_p2 = [p2_vertex_of([kind[bot_sorted[j]][1] for j in F.vertices]) for F in Ft2s.facets]
    ok2 = projective_equivalence(Ft2, F2, [f2_verts.index(u) for u in to_p2]) is not None

    # parallel normalization and balance of the recentered bases
    pi = _parallel_bases(Af, _facet_index(Af, top_idx), _facet_index(Af, bot_idx))
    img = [pi(list(v)) for v in Af.vertices]
    Q1 = hull([img[k][:-1] for k in sorted(top_idx)])
    Q2s = hull([img[k][:-1] for k in bot_sorted])
    Q1c = translate(Q1, la.neg(_interior_point(Q1, center)))
    Q2sc = translate(Q2s, la.neg(_interior_point(Q2s, center)))
    Q2 = polar(Q2sc)
    q2_to_p2 = [p2_vertex_of([kind[bot_sorted[j]][1] for j in F.vertices]) for F in Q2sc.facets]
    ok3 = (projective_equivalence(Q1c, F1, [f1_verts.index(v) for v in to_p1]) is not None
           and projective_equivalence(Q2, F2, [f2_verts.index(u) for u in q2_to_p2]) is not None)
    vmap = {i: q2_to_p2.index(vmap12[v]) for i, v in enumerate(to_p1)}
    bal = balanced(Q1c, Q2, vertex_identification(Q1c, Q2, vmap)).verdict
    pieces = {"A": A, "A_f": Af, "F1~": Ft1, "F2~": Ft2, "Q1": Q1c, "Q2": Q2}
    return InheritanceReport(L1.labels[f], antiprism_ok, ok1 and ok2 and ok3, bal, pieces)


def _dual_face(P: VPolytope, Ps: VPolytope, vertex_set) -> int:
    """The face of P dual to the face of polar(P) with the given vertex set."""
    common = None
    for i in vertex_set:
        s = set(P.facets[i].vertices)
        common = s if common is None else common & s
    return P.smallest_face(tuple(sorted(common)))
