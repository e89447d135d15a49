"""The acceptance suite: thirteen exact checks with time limits.

``run`` returns one ``CriterionResult`` per criterion; ``report`` formats
them as one pass/fail line each. With ``mutate=True`` the 12-gon G is
replaced by a corrupted copy, which must make the G-based checks fail.
"""
from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass
from fractions import Fraction

from . import fixtures as fx
from .certificates import unbalance_system
from .cones import (check_face_cone_lattice, check_face_normal_cone, check_lift_polar, check_normal_cone_polar,
                    check_polar_projectivity, check_sum_lattice, check_sum_polar)
from .constructions import anchors as an
from .constructions.cube import cube_lattice, cube_stamp, cube_stamp_assembly
from .constructions.pentagons import HypothesisError, check_hypotheses, pentagon_pairs, random_valid_halfspace
from .constructions.stamps import rational_anchor_spec, stamp
from .constructions.tents import tent_geometric
from .corpus import fan_pairs, projective_copy_pairs, random_admissible_projectivity, tent_corpus
from .geometry import (Cone, HalfSpace, fans_match, hull, intersect_halfspaces, lifted_join, minkowski_sum, polar,
                       unit_cube)
from .glue import GluingDiagram, run_diagram
from .lp import Infeasible, check_certificate, decide_strict
from .poset import abstract_antiprism, check_lattice, find_isomorphism, is_isomorphism, lower_interval, polygon_lattice
from .predicates import antiprism_of, balanced, face_inheritance, perfectly_centered, recognize_frame
from .projective import INFINITY, apply_projectivity, regular_pentagon_cross_ratio

MUTATED_G_SEEDS = [(8, 1), (6, 6)]


class CheckFailed(AssertionError):
    pass


def need(cond, msg: str) -> None:
    if not cond:
        raise CheckFailed(msg)


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    seconds: float
    limit: float
    detail: str

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"[{tag}] {self.number:2d} {self.name} ({self.seconds:.2f} s / {self.limit:g} s): {self.detail}"


# the criteria; each returns a short detail string or raises CheckFailed


def c_polar(ctx) -> str:
    Gs = polar(ctx.G)
    got = sorted(tuple(21 * x for x in v) for v in Gs.vertices)
    want = fx.signed_permutations([(Fraction(21, 8), 0), (2, 1)])
    need(got == want, f"21 G* has vertices {got[:3]}...")
    return f"21 G* = signed permutations of (21/8,0), (2,1); {len(got)} vertices"


def c_centered(ctx) -> str:
    G = ctx.G
    ok, wit = perfectly_centered(G)
    need(not ok, "G is perfectly centered")
    edge = sorted(tuple(map(Fraction, v)) for v in fx.G_EDGE)
    hits = [w for w in wit if sorted(map(tuple, w.vertices)) == edge]
    need(hits, "no witness at the edge conv{(8,5),(7,7)}")
    w = hits[0]
    need(w.normal_slope == Fraction(1, 2), f"witness normal slope {w.normal_slope}")
    need(not Fraction(5, 8) < w.normal_slope < 1, "slope falls inside (5/8, 1)")
    rep = balanced(G, G)
    need(not rep.verdict, "balanced(G, G) holds")
    need(rep.verdict == ok, "balance and perfect centering disagree")
    return "not perfectly centered at conv{(8,5),(7,7)}, normal slope 1/2; bal(G,G) = false"


def c_certificate(ctx) -> str:
    S = unbalance_system(ctx.G)
    got = sorted(tuple(r) for r in S.M)
    want = sorted(tuple(map(Fraction, r)) for r in fx.G_UNBALANCE_MATRIX)
    need(got == want, "unbalance system differs from the 10 x 6 matrix")
    need(check_certificate(fx.G_UNBALANCE_MATRIX, fx.G_CERTIFICATE), "y = (1,...,1,8,8) is not a certificate")
    res = decide_strict(S)
    need(isinstance(res, Infeasible), "strict system reported feasible")
    need(check_certificate(S.M, res.y), "solver certificate does not validate")
    return f"matrix reproduced; y checks; solver certificate y = ({', '.join(map(str, res.y))})"


def c_copies(ctx) -> str:
    G = ctx.G
    pairs = projective_copy_pairs(G, 100, ctx.seed)
    for k, (p1, p2) in enumerate(pairs):
        rep = balanced(apply_projectivity(p1, G), apply_projectivity(p2, G), stop_early=True)
        need(not rep.verdict, f"pair {k} is balanced")
    return f"{len(pairs)} seeded pairs, none balanced"


def _antiprism_map(P, A) -> list | None:
    """Faces of [P;0] u [P*;1] as (g, f) pairs of P, by vertex sets."""
    L = P.lattice
    n = P.nverts
    AP = abstract_antiprism(L)
    out = []
    for f, lab in enumerate(A.lattice.labels):
        if f == A.lattice.top:
            out.append(AP.top)
            continue
        s0 = [i for i in lab if i < n]
        s1 = [i - n for i in lab if i >= n]
        g = P.smallest_face(s0) if s0 else L.bottom
        # polar vertex j is facet j of P
        if s1:
            common = set(range(n))
            for j in s1:
                common &= set(P.facets[j].vertices)
            h = P.smallest_face(sorted(common)) if common else L.bottom
        else:
            h = L.top
        key = (L.labels[g], L.labels[h])
        if not AP.has_label(key):
            return None
        out.append(AP.id_of(key))
    return out if is_isomorphism(A.lattice, AP, out) else None


def c_antiprism(ctx) -> str:
    fvs = []
    for name, P in (("segment", fx.segment()), ("square", fx.square()), ("cube", fx.centered_cube())):
        A = lifted_join(P, 0, polar(P), 1)
        need(_antiprism_map(P, A) is not None, f"{name}: antiprism faces do not match (g, f*) pairs")
        fvs.append(tuple(A.lattice.f_vector()))
    need(fvs[1] == (8, 16, 10), f"square antiprism f-vector {fvs[1]}")
    geo = hull([(1, 1, 0), (-1, 1, 0), (-1, -1, 0), (1, -1, 0), (1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    need(find_isomorphism(geo.lattice, abstract_antiprism(fx.square().lattice)) is not None,
         "explicit square antiprism differs")
    return f"segment, square, cube match element-for-element; square f-vector {tuple(fvs[1])}"


def c_quads(ctx) -> str:
    P1, P2 = fx.quad_p1(), fx.quad_p2()
    m = fx.quad_identification(P1, P2)
    inv = [0] * len(m)
    for i, j in enumerate(m):
        inv[j] = i
    need(balanced(P1, P2, m).verdict, "bal(P1, P2) fails")
    need(not balanced(P2, P1, inv).verdict, "bal(P2, P1) holds")
    A = antiprism_of(P1, P2, m)
    need(find_isomorphism(A.lattice, abstract_antiprism(P1.lattice)) is not None, "antiprism lattice")
    edges = P1.lattice.elements_of_rank(1)
    for f in edges:
        r = face_inheritance(P1, P2, m, f)
        need(r.ok, f"face inheritance fails at edge {P1.lattice.labels[f]}")
    return f"bal(P1,P2) true, bal(P2,P1) false; antiprism ok; {len(edges)} edges inherit"


def c_tents(ctx) -> str:
    corpus = tent_corpus()
    need(len(corpus) >= 20, "tent corpus too small")
    for name, B, p in corpus:
        R = tent_geometric(B, p)  # raises unless labl(T) matches tent(vis)
        q = R.recover_point()
        need(q.same_projective_point(p), f"{name}: recovered {q.h}, expected {p.h} or its antipode")
    return f"{len(corpus)} (base, point) pairs round-trip"


def c_fans(ctx) -> str:
    pairs = fan_pairs(ctx.seed, 10)
    for name, A, B in pairs:
        ok, probs = fans_match(minkowski_sum(A, B), A, B)
        need(ok, f"{name}: {probs[:2]}")
    return f"{len(pairs)} pairs, including the triangle/square instance"


def _cone_pairs():
    return [
        (Cone([[1, 0, 0]], [], 3), Cone([[1, 1, 0], [1, 1, 1]], [], 3)),
        (Cone([[1, 2]], [], 2), Cone([[1, -1]], [], 2)),
        (Cone([[1, 0, 0, 1], [0, 1, 0, 1]], [], 4), Cone([[0, 0, 1, 0], [1, 1, 1, 3]], [], 4)),
    ]


def c_identities(ctx) -> str:
    polys = [fx.dodecagon(), fx.square(), fx.centered_cube(), hull([(2, 0), (-1, 1), (-1, -2)])]
    n = 0
    for C1, C2 in _cone_pairs():
        need(check_sum_lattice(C1, C2), "labl of a cone sum")
        need(check_sum_polar(C1, C2), "polar of a cone sum")
        n += 2
    for P in polys:
        L = P.lattice
        for f in range(len(L)):
            if f != L.top:
                need(check_face_cone_lattice(P, f), "labl of a face cone")
            need(check_normal_cone_polar(P, f), "normal cone vs polar face cone")
            for g in L.below(f):
                if g != L.bottom:
                    need(check_face_normal_cone(P, f, g), "normal cone of a face")
                    n += 1
            n += 2
        for r in (1, Fraction(3, 2), Fraction(1, 5)):
            need(check_lift_polar(P, r), "polar of a lifted cone")
            n += 1
    rng = random.Random(ctx.seed)
    for P in polys:
        for _ in range(3):
            need(check_polar_projectivity(random_admissible_projectivity(rng, P), P), "polar projectivity")
            n += 1
    return f"{n} exact identity instances"


def c_cube(ctx) -> str:
    sizes = []
    for d in (1, 2):
        g = cube_stamp(d)
        need(check_lattice(g.lattice).ok, f"cube stamp d={d} fails check_lattice")
        need(find_isomorphism(lower_interval(g.lattice, g.faces["f_cube"]), cube_lattice(d)) is not None,
             f"f_cube of d={d} is not a cube")
        again = len(cube_stamp(d))
        D = cube_stamp_assembly(d).diagram()
        rev = run_diagram(GluingDiagram(list(D.nodes), list(reversed(D.edges))))
        need(len(g) == again == len(rev), f"d={d} sizes {len(g)}, {again}, {len(rev)}")
        need(find_isomorphism(g.lattice, rev) is not None, f"d={d} depends on the edge order")
        sizes.append(len(g))
    return f"element counts {sizes} for d = 1, 2"


def _verify_pair(pp, H, Q) -> None:
    need(H.on_boundary(pp.p), f"{pp.p} is not on the boundary")
    need(tuple(pp.p) in Q.vertices, f"{pp.p} is not a vertex of Q")
    vs = Q.face_vertex_indices(pp.pentagon)
    need(Q.lattice.rank[pp.pentagon] == 2 and len(vs) == 5, "face is not a pentagon")
    need(Q.vertices.index(tuple(pp.p)) in vs, "pentagon misses p")


def c_pentagons(ctx) -> str:
    cases = [(HalfSpace([1, 1, 1], Fraction(3, 2)), 3)]
    rng = random.Random(ctx.seed)
    for d in (3, 4):
        cases += [(random_valid_halfspace(rng, d), d) for _ in range(25)]
    for H, d in cases:
        Q = intersect_halfspaces(unit_cube(d), [H])
        pairs = pentagon_pairs(H, d)
        need(len(pairs) == d and len({p.p for p in pairs}) == d, f"{len(pairs)} pairs for d={d}")
        for pp in pairs:
            _verify_pair(pp, H, Q)
    bad = {"misses_facet": HalfSpace([1, 0, 0], Fraction(1, 2)),
           "vertex_on_boundary": HalfSpace([1, 1, 1], 1),
           "contains_cube": HalfSpace([1, 1, 1], 5)}
    for clause, H in bad.items():
        try:
            check_hypotheses(H, 3)
        except HypothesisError as exc:
            need(clause in exc.clauses, f"{clause} not named: {exc.clauses}")
        else:
            raise CheckFailed(f"{clause} not rejected")
    return f"{len(cases)} half-spaces; all three clauses rejected by name"


def c_frames(ctx) -> str:
    P = hull(fx.anchor_polygons(Fraction(1, 2))["octagon"])
    fr = recognize_frame(P, {"0": 0, "1": 2, "oo": 3})
    need(fr is not None, "octagon is not a frame")
    vals = [fr.values[i] for i in range(4)]
    need(vals == [0, Fraction(1, 2), 1, INFINITY], f"frame values {vals}")
    cr = regular_pentagon_cross_ratio()
    need(abs(cr - 1.6180339887) <= 1e-9, f"pentagon cross ratio {cr}")
    return f"frame represents (0, 1/2, 1, oo); pentagon cross ratio {cr:.10f}"


def _labeled_interval(g, port_name, face_name, want) -> bool:
    """The interval below a face, named through port coordinates, equals the labelled lattice ``want``."""
    L = g.lattice
    port = g.port(port_name)
    below = L.below(g.faces[face_name])
    sub = lower_interval(L, g.faces[face_name])
    try:
        m = [want.id_of(port.coords[x][0]) for x in below]
    except KeyError:
        return False
    return is_isomorphism(sub, want, m)


def c_pipeline(ctx) -> str:
    spec = rational_anchor_spec(Fraction(1, 2))
    R = an.r_alpha(spec)
    need(check_lattice(R.lattice).ok, "R_alpha fails check_lattice")
    need(_labeled_interval(R, "frame", "g_alpha", polygon_lattice(an.O_NAMES)), "g_alpha is not the labeled octagon")
    A = an.anchor(spec)
    need(check_lattice(A.lattice).ok, "anchor fails check_lattice")
    need(_labeled_interval(A, "pentagon", "f_pentagon", polygon_lattice(an.F_NAMES)), "f_pentagon is not the pentagon")
    T = hull([(0, Fraction(1, 2)), (Fraction(1, 2), 0), (2, 2)])
    S = stamp(T)
    need(S.gadget is not None, "stamp of the triangle was deferred")
    need(check_lattice(S.lattice).ok, "stamp fails check_lattice")
    need(_labeled_interval(S.gadget, "P", "f_P", S.polytope.lattice), "f_P is not the triangle")
    return f"R_alpha {len(R)}, anchor {len(A)}, stamp(triangle) {len(S.gadget)} elements"


CRITERIA = [
    (1, "polar of the 12-gon G", 1, c_polar),
    (2, "G is not perfectly centered, so bal(G,G) fails", 1, c_centered),
    (3, "unbalance certificate for G", 1, c_certificate),
    (4, "no two projective copies of G are balanced", 60, c_copies),
    (5, "antiprisms match abstract antiprisms", 10, c_antiprism),
    (6, "balanced quadrilaterals and face inheritance", 10, c_quads),
    (7, "tent round trip", 30, c_tents),
    (8, "Minkowski fans are common refinements", 10, c_fans),
    (9, "cone and polar identities", 10, c_identities),
    (10, "cube stamp", 60, c_cube),
    (11, "pentagon pairs and hypothesis checks", 60, c_pentagons),
    (12, "computational frames and cross ratios", 1, c_frames),
    (13, "anchor, R_alpha and stamp pipeline", 120, c_pipeline),
]


@dataclass
class Context:
    G: object
    seed: int


def run(seed: int = 0, only=None, mutate: bool = False) -> list[CriterionResult]:
    G = hull(fx.signed_permutations(MUTATED_G_SEEDS)) if mutate else fx.dodecagon()
    ctx = Context(G, seed)
    out = []
    for num, name, limit, fn in CRITERIA:
        if only and num not in only:
            continue
        t = time.perf_counter()
        try:
            detail = fn(ctx)
            ok = True
        except CheckFailed as exc:
            ok, detail = False, str(exc)
        except Exception as exc:  # a crash is a failure with its witness
            ok, detail = False, f"{type(exc).__name__}: {exc} at {traceback.extract_tb(exc.__traceback__)[-1].name}"
        dt = time.perf_counter() - t
        if ok and dt > limit:
            ok, detail = False, f"over time: {detail}"
        out.append(CriterionResult(num, name, ok, dt, limit, detail))
    return out


def report(results: list[CriterionResult]) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.ok for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
