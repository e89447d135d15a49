"""Command line front end.

Every command prints one JSON object (keys sorted, no timings unless
``--timing``) and exits 0 for an affirmative verdict, 1 for a negative
one, 2 for bad input and 3 when the element budget is exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import io
from . import linalg as la
from .geometry import GeometryError, Fan, HalfSpace, VPolytope, common_refinement, fans_match, hull, minkowski_sum
from .geometry import normal_fan, polar
from .glue import BudgetExceeded, GlueError, run_diagram
from .lp import Infeasible, LPError, check_certificate, decide_strict
from .poset import FaceLattice, LatticeError, abstract_antiprism, check_lattice, find_isomorphism, intervals_poset
from .predicates import PredicateError
from .projective import INFINITY, Infinity, OrientedPoint, visibility_map

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class CommandResult:
    verdict: bool
    summary: dict
    artifacts: list = field(default_factory=list)
    witness: object = None
    seconds: float | None = None

    def to_dict(self, timing: bool = False) -> dict:
        out = {"verdict": self.verdict, "summary": self.summary, "artifacts": self.artifacts}
        if self.witness is not None:
            out["witness"] = self.witness
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, Infinity):
        return "oo"
    if isinstance(x, OrientedPoint):
        return [jsonable(v) for v in x.h]
    if isinstance(x, frozenset):
        return sorted((jsonable(v) for v in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in x.items()}
    return x


# inputs


def parse_point(text: str) -> OrientedPoint:
    """"2,1/2" is a finite point, "inf:1,0" a point at infinity, "neg:2,1" the antipode of (2,1)."""
    kind, _, rest = text.partition(":") if ":" in text else ("", "", text)
    try:
        v = [Fraction(t) for t in rest.replace(" ", "").split(",") if t]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad point {text!r}") from None
    if not v:
        raise InputError(f"bad point {text!r}")
    if kind in ("", "fin"):
        return OrientedPoint.finite(v)
    if kind == "inf":
        return OrientedPoint.at_infinity(v)
    if kind == "neg":
        return OrientedPoint.finite(v).neg()
    raise InputError(f"unknown point kind {kind!r}")


def parse_halfspace(text: str) -> HalfSpace:
    """"1,1,1<=3/2" is the half-space x + y + z <= 3/2."""
    if "<=" not in text:
        raise InputError("half-space must look like a1,...,ad<=b")
    lhs, rhs = text.split("<=")
    try:
        return HalfSpace([Fraction(t) for t in lhs.split(",")], Fraction(rhs))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad half-space {text!r}") from None


def load_poly(path) -> VPolytope:
    try:
        return io.read_poly(path)
    except OSError as exc:
        raise InputError(str(exc)) from None


def load_lattice(path) -> FaceLattice:
    """A lattice file, or the face lattice of a polytope file."""
    p = Path(path)
    try:
        if p.suffix == ".json":
            return io.read_lattice(p)
        return io.read_poly(p).lattice
    except OSError as exc:
        raise InputError(str(exc)) from None


def load_spec(args):
    from .constructions.algebra import AlgebraicNumberSpec
    from .constructions.stamps import rational_anchor_spec
    if args.spec:
        try:
            return AlgebraicNumberSpec.parse(Path(args.spec).read_text())
        except OSError as exc:
            raise InputError(str(exc)) from None
    if args.alpha:
        return rational_anchor_spec(Fraction(args.alpha))
    raise InputError("give an anchor spec file or --alpha")


# outputs


def write_outputs(args, P: VPolytope | None = None, L: FaceLattice | None = None) -> list:
    out = []
    if getattr(args, "output", None):
        if P is not None:
            io.write_poly(P, args.output)
        elif L is not None:
            io.write_lattice(L, args.output)
        out.append(args.output)
    if getattr(args, "lattice", None) and L is not None:
        io.write_lattice(L, args.lattice)
        out.append(args.lattice)
    if getattr(args, "off", None) and P is not None:
        Path(args.off).write_text(io.dump_off(P))
        out.append(args.off)
    return out


def poly_summary(P: VPolytope) -> dict:
    return {"dim": P.dim, "ambient": P.ambient, "f_vector": list(P.lattice.f_vector()),
            "vertices": [[io.fstr(x) for x in v] for v in P.vertices]}


def lattice_summary(L: FaceLattice) -> dict:
    r = check_lattice(L)
    return {"elements": len(L), "rank": L.rank[L.top], "f_vector": list(L.f_vector()), "check_lattice": r.ok}


def _budget(args, n: int) -> None:
    if args.budget is not None and n > args.budget:
        raise BudgetExceeded(n, args.budget)


# commands


def cmd_hull(args):
    P = load_poly(args.polytope)
    return CommandResult(True, poly_summary(P), write_outputs(args, P, P.lattice))


def cmd_polar(args):
    Q = polar(load_poly(args.polytope))
    return CommandResult(True, poly_summary(Q), write_outputs(args, Q, Q.lattice))


def cmd_nfan(args):
    F = normal_fan(load_poly(args.polytope))
    d = io.fan_to_dict(F)
    arts = []
    if args.output:
        Path(args.output).write_text(io.dump_fan(F))
        arts.append(args.output)
    return CommandResult(True, {"cones": len(F.cones), "fan": d if not args.output else None}, arts)


def cmd_refine(args):
    A, B = load_poly(args.a), load_poly(args.b)
    R = common_refinement(normal_fan(A), normal_fan(B))
    ok, probs = fans_match(minkowski_sum(A, B), A, B)
    arts = []
    if args.output:
        Path(args.output).write_text(io.dump_fan(R))
        arts.append(args.output)
    dims = sorted(C.dim for C in R.cones.values())
    return CommandResult(ok, {"cells": len(R.cones), "rays": dims.count(1), "matches_minkowski_fan": ok}, arts,
                         probs or None)


def cmd_vis(args):
    P = load_poly(args.polytope)
    p = parse_point(args.point)
    if p.dim != P.ambient:
        raise InputError("point and polytope dimensions differ")
    vis = visibility_map(p, P)
    L = P.lattice
    table = [{"face": jsonable(L.labels[f]), "rank": L.rank[f], "class": vis[f]} for f in range(len(L))]
    return CommandResult(True, {"point": jsonable(p), "faces": table})


def _identify(args, P1, P2):
    mode = args.identify
    if mode == "auto":
        return "auto"
    if mode == "labels":
        return None
    raise InputError(f"unknown identification {mode!r}")


def cmd_bal(args):
    from .predicates import balanced
    P1, P2 = load_poly(args.a), load_poly(args.b)
    rep = balanced(P1, P2, _identify(args, P1, P2))
    return CommandResult(rep.verdict, {"balanced": rep.verdict, "identification": rep.identification},
                         witness=jsonable(rep.witnesses[:20]) or None)


def cmd_perfect(args):
    from .predicates import perfectly_centered
    ok, wit = perfectly_centered(load_poly(args.polytope))
    ws = [{"face": jsonable(w.face), "vertices": jsonable(w.vertices), "projection": jsonable(w.projection),
           "normal_slope": jsonable(w.normal_slope), "vertex_slopes": jsonable(w.vertex_slopes)} for w in wit]
    return CommandResult(ok, {"perfectly_centered": ok}, witness=ws or None)


def cmd_antiprism(args):
    from .predicates import antiprism_of, balanced
    P1 = load_poly(args.a)
    P2 = load_poly(args.b) if args.b else P1
    ident = _identify(args, P1, P2)
    if ident == "auto":
        ident = balanced(P1, P2, "auto").identification
    try:
        A = antiprism_of(P1, P2, ident)
    except PredicateError as exc:
        return CommandResult(False, {"antiprism": False}, witness=str(exc))
    return CommandResult(True, poly_summary(A), write_outputs(args, A, A.lattice))


def cmd_intervals(args):
    L = intervals_poset(load_lattice(args.input))
    _budget(args, len(L))
    return CommandResult(True, lattice_summary(L), write_outputs(args, None, L))


def cmd_abstract_antiprism(args):
    L = abstract_antiprism(load_lattice(args.input))
    _budget(args, len(L))
    return CommandResult(True, lattice_summary(L), write_outputs(args, None, L))


def _template(args):
    from .constructions.anchors import anchor_pieces, r_alpha_assembly, StubArithmeticProvider
    from .constructions.cube import cube_stamp_assembly
    from .constructions.stamps import stamp_assembly
    name = args.template
    if name == "cube-stamp":
        return cube_stamp_assembly(args.d).diagram()
    if name == "anchor":
        return anchor_pieces(load_spec(args)).diagram()
    if name == "r-alpha":
        return r_alpha_assembly(load_spec(args), StubArithmeticProvider())[0].diagram()
    if name == "stamp":
        if not args.polytope:
            raise InputError("the stamp template needs --polytope")
        A, _, _, _, deferred = stamp_assembly(load_poly(args.polytope), seed=args.seed, budget=args.budget)
        if deferred:
            raise BudgetExceeded(sum(v["elements_lower_bound"] for v in deferred.values()), args.budget)
        return A.diagram()
    raise InputError(f"unknown template {name!r}")


def cmd_glue(args):
    if args.template:
        D = _template(args)
    elif args.diagram:
        try:
            D = io.parse_diagram(Path(args.diagram).read_text())
        except OSError as exc:
            raise InputError(str(exc)) from None
    else:
        raise InputError("give a diagram file or --template")
    arts = []
    if args.emit:
        Path(args.emit).write_text(io.dump_diagram(D))
        arts.append(args.emit)
        return CommandResult(True, {"nodes": len(D.nodes), "edges": len(D.edges),
                                    "pieces_elements": D.total_elements()}, arts)
    L = run_diagram(D, budget=args.budget)
    return CommandResult(True, lattice_summary(L), arts + write_outputs(args, None, L))


def cmd_whittle(args):
    from .glue import whittle
    L0, L1 = load_lattice(args.a), load_lattice(args.b)
    L = whittle(L0, args.vertex_a, L1, args.vertex_b)
    _budget(args, len(L))
    return CommandResult(True, lattice_summary(L), write_outputs(args, None, L))


def cmd_tent(args):
    from .constructions.tents import tent_geometric
    B = load_poly(args.polytope)
    p = parse_point(args.point)
    R = tent_geometric(B, p)
    q = R.recover_point()
    ok = q.same_projective_point(p)
    s = poly_summary(R.polytope)
    s.update({"recovered_point": jsonable(q), "matches_abstract_tent": True, "round_trip": ok})
    return CommandResult(ok, s, write_outputs(args, R.polytope, R.polytope.lattice))


def cmd_transmitter(args):
    from .constructions.tents import full_transmitter, geometric_transmitter
    if args.b:
        T, g = geometric_transmitter(load_poly(args.a), load_poly(args.b))
        s = poly_summary(T)
        s["ports"] = sorted(g.ports)
        return CommandResult(True, s, write_outputs(args, T, T.lattice))
    L = full_transmitter(load_lattice(args.a))
    return CommandResult(True, lattice_summary(L), write_outputs(args, None, L))


def cmd_connector(args):
    from .constructions.gadgets import connector
    g = connector(args.n, load_lattice(args.input))
    _budget(args, len(g))
    s = lattice_summary(g.lattice)
    s["ports"] = sorted(g.ports)
    return CommandResult(True, s, write_outputs(args, None, g.lattice))


def cmd_adapter(args):
    from .constructions.gadgets import adapter
    F = load_lattice(args.input)
    g = adapter(F, args.face)
    s = lattice_summary(g.lattice)
    s["ports"] = sorted(g.ports)
    return CommandResult(True, s, write_outputs(args, None, g.lattice))


def cmd_lamppost(args):
    from .constructions.gadgets import lamppost
    from .constructions.tents import VisibilitySpec
    P = load_poly(args.polytope)
    p = parse_point(args.point)
    chi = VisibilitySpec(P.lattice, visibility_map(p, P))
    g = lamppost(chi, args.f0, args.f1)
    s = lattice_summary(g.lattice)
    s["ports"] = sorted(g.ports)
    return CommandResult(s["check_lattice"], s, write_outputs(args, None, g.lattice))


def cmd_frame(args):
    from .predicates import recognize_frame
    P = load_poly(args.polytope)
    anchors = None
    if args.anchors:
        a = [int(x) for x in args.anchors.split(",")]
        if len(a) != 3:
            raise InputError("--anchors takes three indices: 0,1,oo")
        anchors = {"0": a[0], "1": a[1], "oo": a[2]}
    fr = recognize_frame(P, anchors)
    if fr is None:
        return CommandResult(False, {"frame": False})
    s = {"frame": True, "points": [jsonable(p) for p in fr.points],
         "values": {str(k): jsonable(v) for k, v in sorted(fr.values.items())}}
    return CommandResult(True, s)


def _gadget_result(args, g, face: str):
    from .poset import lower_interval
    s = lattice_summary(g.lattice)
    s["ports"] = sorted(g.ports)
    s["faces"] = sorted(g.faces)
    s[face] = list(lower_interval(g.lattice, g.faces[face]).f_vector())
    return CommandResult(s["check_lattice"], s, write_outputs(args, None, g.lattice))


def cmd_cube_stamp(args):
    from .constructions.cube import cube_stamp
    return _gadget_result(args, cube_stamp(args.d, budget=args.budget), "f_cube")


def cmd_anchor(args):
    from .constructions.anchors import anchor, anchor_size_lower_bound
    spec = load_spec(args)
    _budget(args, anchor_size_lower_bound(spec))
    return _gadget_result(args, anchor(spec, budget=args.budget), "f_pentagon")


def cmd_r_alpha(args):
    from .constructions.anchors import r_alpha
    return _gadget_result(args, r_alpha(load_spec(args), budget=args.budget), "g_alpha")


def cmd_pent_find(args):
    from .constructions.pentagons import hypothesis_violations, pentagon_pairs
    H = parse_halfspace(args.halfspace)
    d = len(H.normal)
    bad = hypothesis_violations(H, d)
    if bad:
        return CommandResult(False, {"violations": bad})
    pairs = pentagon_pairs(H, d)
    rows = [{"p": jsonable(pp.p), "alpha": jsonable(pp.alpha), "square": pp.square, "edge": pp.edge,
             "label": pp.label} for pp in pairs]
    return CommandResult(True, {"d": d, "pairs": rows})


def cmd_normalize(args):
    from .constructions.pentagons import normalize_pose
    pi, Q = normalize_pose(load_poly(args.polytope), args.seed)
    s = poly_summary(Q)
    s["projectivity"] = jsonable(pi.matrix)
    return CommandResult(True, s, write_outputs(args, Q, Q.lattice))


def cmd_stamp(args):
    from .constructions.stamps import DEFAULT_BUDGET, stamp
    budget = DEFAULT_BUDGET if args.budget is None else args.budget
    R = stamp(load_poly(args.polytope), budget=budget, seed=args.seed)
    if R.gadget is not None:
        res = _gadget_result(args, R.gadget, "f_P")
        res.summary["pose"] = jsonable(R.pose.matrix)
        return res
    m = R.manifest
    s = {"manifest": True, "summary": m.summary, "pieces": {k: len(v) for k, v in sorted(m.pieces.items())},
         "deferred": jsonable(m.deferred), "elements_lower_bound": m.total_elements}
    arts = []
    if args.output:
        Path(args.output).write_text(json.dumps(jsonable(s), sort_keys=True, indent=1) + "\n")
        arts.append(args.output)
    res = CommandResult(False, s, arts)
    res.budget = True
    return res


def cmd_certify(args):
    try:
        M, y = io.read_matrix(args.matrix), io.read_vector(args.vector)
    except OSError as exc:
        raise InputError(str(exc)) from None
    ok = check_certificate(M, y)
    return CommandResult(ok, {"certificate": [io.fstr(v) for v in y], "rows": len(M), "columns": len(M[0]),
                              "valid": ok})


def cmd_unbalance(args):
    from .certificates import PARAMETERS, unbalance_system
    S = unbalance_system(load_poly(args.polytope))
    res = decide_strict(S)
    s = {"parameters": list(PARAMETERS), "matrix": [[io.fstr(x) for x in r] for r in S.M],
         "infeasible": isinstance(res, Infeasible)}
    if isinstance(res, Infeasible):
        s["certificate"] = [io.fstr(v) for v in res.y]
        s["certificate_valid"] = check_certificate(S.M, res.y)
    else:
        s["solution"] = [io.fstr(v) for v in res.x]
    arts = []
    if args.output:
        Path(args.output).write_text(io.dump_matrix(S.M))
        arts.append(args.output)
    return CommandResult(isinstance(res, Infeasible), s, arts)


def cmd_verify_paper(args):
    from .acceptance import run
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run(seed=args.seed, only=only, mutate=args.mutate)
    rows = [{"criterion": r.number, "name": r.name, "pass": r.ok, "detail": r.detail} for r in results]
    if args.timing:
        for row, r in zip(rows, results):
            row["seconds"] = round(r.seconds, 3)
    failed = [r.name for r in results if not r.ok]
    return CommandResult(not failed, {"results": rows, "failed": failed})


# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="projpoly", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized corpora and poses")
    ap.add_argument("--budget", type=int, default=None, help="cap on lattice elements")
    ap.add_argument("--timing", action="store_true", help="include timings (output is then not reproducible)")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    def out(p, poly=True):
        p.add_argument("-o", "--output", help="canonical output file")
        if poly:
            p.add_argument("--lattice", help="also write the face lattice (JSON)")
            p.add_argument("--off", help="lossy float OFF export")

    p = cmd("hull", cmd_hull, "convex hull of a vertex file")
    p.add_argument("polytope")
    out(p)
    p = cmd("polar", cmd_polar, "polar dual")
    p.add_argument("polytope")
    out(p)
    p = cmd("nfan", cmd_nfan, "normal fan")
    p.add_argument("polytope")
    p.add_argument("-o", "--output")
    p = cmd("refine", cmd_refine, "common refinement of two normal fans, checked against the Minkowski sum")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")
    p = cmd("vis", cmd_vis, "visibility class of every face")
    p.add_argument("--point", required=True)
    p.add_argument("--polytope", required=True)
    p = cmd("bal", cmd_bal, "is (A, B) a balanced pair")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--identify", default="auto", choices=["auto", "labels"])
    p = cmd("perfect", cmd_perfect, "is the polytope perfectly centered")
    p.add_argument("polytope")
    p = cmd("antiprism", cmd_antiprism, "antiprism over a balanced pair")
    p.add_argument("a")
    p.add_argument("b", nargs="?")
    p.add_argument("--identify", default="auto", choices=["auto", "labels"])
    out(p)
    for name, fn, h in (("intervals", cmd_intervals, "poset of intervals"),
                        ("abstract-antiprism", cmd_abstract_antiprism, "abstract antiprism of a lattice")):
        p = cmd(name, fn, h)
        p.add_argument("input", help="lattice .json or polytope file")
        out(p, poly=False)
    p = cmd("glue", cmd_glue, "run a gluing diagram file or a built-in template")
    p.add_argument("diagram", nargs="?")
    p.add_argument("--template", choices=["cube-stamp", "anchor", "r-alpha", "stamp"])
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--alpha")
    p.add_argument("--spec")
    p.add_argument("--polytope")
    p.add_argument("--emit", help="write the diagram instead of running it")
    out(p, poly=False)
    p = cmd("whittle", cmd_whittle, "whittle two lattices at vertices (element ids)")
    p.add_argument("a")
    p.add_argument("vertex_a", type=int)
    p.add_argument("b")
    p.add_argument("vertex_b", type=int)
    out(p, poly=False)
    p = cmd("tent", cmd_tent, "geometric tent over a base through a point")
    p.add_argument("--polytope", required=True)
    p.add_argument("--point", required=True)
    out(p)
    p = cmd("transmitter", cmd_transmitter, "geometric transmitter of two polytopes, or full transmitter of one")
    p.add_argument("a")
    p.add_argument("b", nargs="?")
    out(p)
    p = cmd("connector", cmd_connector, "connector with n pyramidal ports")
    p.add_argument("n", type=int)
    p.add_argument("input")
    out(p, poly=False)
    p = cmd("adapter", cmd_adapter, "adapter from a lattice to one of its faces (element id)")
    p.add_argument("input")
    p.add_argument("face", type=int)
    out(p, poly=False)
    p = cmd("lamppost", cmd_lamppost, "lamppost for the visibility of a point and two faces")
    p.add_argument("--polytope", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--f0", type=int, required=True)
    p.add_argument("--f1", type=int, required=True)
    out(p, poly=False)
    p = cmd("frame", cmd_frame, "recognize a computational frame")
    p.add_argument("polytope")
    p.add_argument("--anchors", help="indices of the points playing 0,1,oo")
    p = cmd("cube-stamp", cmd_cube_stamp, "stamp of the unit cube")
    p.add_argument("--d", type=int, default=2)
    out(p, poly=False)
    for name, fn in (("anchor", cmd_anchor), ("r-alpha", cmd_r_alpha)):
        p = cmd(name, fn, f"{name} with stub arithmetic polytopes")
        p.add_argument("spec", nargs="?", help="anchor spec file")
        p.add_argument("--alpha", help="rational alpha in (0,1) instead of a spec file")
        out(p, poly=False)
    p = cmd("pent-find", cmd_pent_find, "pentagon pairs of the unit cube cut by a half-space")
    p.add_argument("halfspace", help="a1,...,ad<=b")
    p = cmd("normalize", cmd_normalize, "rational affine pose meeting the pentagon hypotheses")
    p.add_argument("polytope")
    out(p)
    p = cmd("stamp", cmd_stamp, "stamp of a 2- or 3-polytope")
    p.add_argument("polytope")
    out(p, poly=False)
    p = cmd("certify", cmd_certify, "check a Gordan certificate y for M x > 0")
    p.add_argument("matrix")
    p.add_argument("vector")
    p = cmd("unbalance", cmd_unbalance, "strict system and certificate for a square-symmetric polygon")
    p.add_argument("polytope")
    p.add_argument("-o", "--output", help="write the matrix")
    p = cmd("verify-paper", cmd_verify_paper, "run the acceptance suite")
    p.add_argument("--only", help="comma separated criterion numbers")
    p.add_argument("--mutate", action="store_true", help="negative control with a corrupted 12-gon")
    return ap


INPUT_ERRORS = (InputError, io.FormatError, GeometryError, PredicateError, GlueError, LatticeError, LPError,
                ValueError, KeyError)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t = time.perf_counter()
    random.seed(args.seed)
    try:
        res = args.fn(args)
    except BudgetExceeded as exc:
        print(json.dumps({"verdict": False, "error": "budget", "detail": str(exc)}, sort_keys=True))
        return EXIT_BUDGET
    except INPUT_ERRORS as exc:
        print(json.dumps({"verdict": False, "error": "input", "detail": f"{type(exc).__name__}: {exc}"},
                         sort_keys=True))
        return EXIT_INPUT
    res.seconds = time.perf_counter() - t
    print(json.dumps(jsonable(res.to_dict(args.timing)), sort_keys=True, indent=1))
    if getattr(res, "budget", False):
        return EXIT_BUDGET
    return EXIT_YES if res.verdict else EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
