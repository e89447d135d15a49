"""R_alpha and anchor polytopes.

The four basic arithmetic polytopes are not built here; they come from a
provider. ``StubArithmeticProvider`` hands out pyramids over pyramids over
2k-gons. That is enough to run and check the gluing diagrams, but it says
nothing about realizations.
"""
from __future__ import annotations

from typing import Protocol

from ..poset import FaceLattice, check_lattice, polygon_lattice, pyramid
from .algebra import AlgebraicNumberSpec, RelationProgram, relation_program
from .assembly import Assembly, Gadget, Port
from .gadgets import connector, lamppost
from .tents import ConstructionError, polygon_forgetful_gadget, polygon_visibility

FRAME_SIZES = {"2x": 8, "x+y": 10, "x2": 10, "xy": 12}

E_NAMES = ["oo", "0", "a", "1", "oo'", "h", "0'", "a'", "1'"]
F_NAMES = ["oo", "0", "oo'", "h", "0'"]
O_NAMES = ["oo", "0", "a", "1", "oo'", "0'", "a'", "1'"]


class ArithmeticPolytopeProvider(Protocol):
    """Supplies the basic arithmetic polytopes for "2x", "x+y", "x2", "xy".

    ``polytope(kind)`` returns a Gadget with a port "frame": a facet that is
    a pyramid over a 2k-gon, with coordinates (label in
    polygon_lattice(["p0", ..., "p{2k-1}"]), "b"|"a").
    """

    semantic: bool

    def polytope(self, kind: str) -> Gadget: ...


def frame_names(k2: int) -> list[str]:
    return [f"p{i}" for i in range(k2)]


class StubArithmeticProvider:
    """Structural stand-ins: pyr(pyr(2k-gon)); not the real arithmetic polytopes."""

    semantic = False

    def __init__(self):
        self._cache = {}

    def polytope(self, kind: str) -> Gadget:
        if kind not in FRAME_SIZES:
            raise ConstructionError(f"unknown arithmetic kind {kind!r}")
        if kind not in self._cache:
            Gp = polygon_lattice(frame_names(FRAME_SIZES[kind]))
            P = pyramid(pyramid(Gp))
            top = Gp.labels[Gp.top]
            facet = P.id_of(((top, "a"), "b"))
            coords = {x: P.labels[x][0] for x in P.below(facet)}
            self._cache[kind] = Gadget(P, {"frame": Port(facet, coords)}, {"frame": facet})
        return self._cache[kind]


def validate_provider(provider: ArithmeticPolytopeProvider) -> None:
    for kind, k2 in FRAME_SIZES.items():
        g = provider.polytope(kind)
        if not check_lattice(g.lattice).ok:
            raise ConstructionError(f"provider lattice for {kind} is malformed")
        want = {(lab, s) for lab in polygon_lattice(frame_names(k2)).labels for s in ("b", "a")}
        if set(g.port("frame").coords.values()) != want:
            raise ConstructionError(f"provider frame for {kind} is not a pyramid over a {k2}-gon")


def g_names(prog: RelationProgram) -> list[str]:
    """Edge names of the polygon G in cyclic order."""
    names = []
    for i in range(prog.m):
        names.append({prog.o: "0", prog.a: "a", prog.u: "1"}.get(i, f"x{i}"))
    return names + ["oo'"] + [n + "'" for n in names] + ["oo"]


def _frame_relabel(small: list[str]):
    pos = {n: f"p{i}" for i, n in enumerate(small)}

    def fn(c):
        lab, s = c
        if lab in ("bot", "top"):
            return (lab, s)
        if isinstance(lab, tuple):
            return (("v", pos[lab[1]], pos[lab[2]]), s)
        return (pos[lab], s)
    return fn


def r_alpha_assembly(spec: AlgebraicNumberSpec | RelationProgram,
                     provider: ArithmeticPolytopeProvider) -> tuple[Assembly, RelationProgram]:
    prog = spec if isinstance(spec, RelationProgram) else relation_program(spec)
    validate_provider(provider)
    G = g_names(prog)
    base = G[:prog.m]
    rels = [(k, r) for k in ("2x", "x+y", "x2", "xy") for r in prog.relations[k]]
    A = Assembly()
    A.add("CG", connector(1 + len(rels), polygon_lattice(G)))
    A.add("Tua", polygon_forgetful_gadget(G, O_NAMES))
    A.join("CG", "pyr0", "Tua", "pyr0")
    for n, (kind, r) in enumerate(rels):
        idx = set(r) | {prog.o}
        if kind in ("x2", "xy"):
            idx.add(prog.u)
        keep = {base[i] for i in idx}
        keep |= {x + "'" for x in keep} | {"oo", "oo'"}
        small = [x for x in G if x in keep]
        if len(small) != FRAME_SIZES[kind]:
            raise ConstructionError(f"relation {kind}{r} needs a {FRAME_SIZES[kind]}-gon frame")
        t = polygon_forgetful_gadget(G, small)
        t.ports["pyr1"] = t.ports["pyr1"].relabel(_frame_relabel(small))
        A.add(f"T{n}", t)
        A.add(f"R{n}", provider.polytope(kind))
        A.join("CG", f"pyr{n + 1}", f"T{n}", "pyr0")
        A.join(f"T{n}", "pyr1", f"R{n}", "frame")
    return A, prog


def r_alpha(spec, provider: ArithmeticPolytopeProvider | None = None, budget: int | None = None) -> Gadget:
    """R_alpha with port "frame" (pyramid over the octagon O) and face "g_alpha"."""
    provider = provider or StubArithmeticProvider()
    A, prog = r_alpha_assembly(spec, provider)
    g = A.build(ports={"frame": ("Tua", "pyr1")}, faces={}, budget=budget)
    g.faces["g_alpha"] = g.port("frame").element(("top", "b"))
    g.faces["frame"] = g.port("frame").facet
    return g


def chi_one() -> dict:
    chi = {e: "+" for e in O_NAMES}
    chi.update({"1": "0", "1'": "0", "oo": "-", "0": "-", "a": "-"})
    return chi


def chi_alpha() -> dict:
    chi = {e: "+" for e in E_NAMES}
    chi.update({"a": "0", "a'": "0", "1'": "-", "oo": "-", "0": "-"})
    return chi


def anchor_pieces(spec, provider: ArithmeticPolytopeProvider | None = None, budget: int | None = None) -> Assembly:
    provider = provider or StubArithmeticProvider()
    E = polygon_lattice(E_NAMES)
    O = polygon_lattice(O_NAMES)
    A = Assembly()
    A.add("CE", connector(4, E))
    A.add("TEF", polygon_forgetful_gadget(E_NAMES, F_NAMES))
    A.add("TEO1", polygon_forgetful_gadget(E_NAMES, O_NAMES))
    A.add("TEO2", polygon_forgetful_gadget(E_NAMES, O_NAMES))
    A.add("R", r_alpha(spec, provider, budget))
    A.add("X1", lamppost(polygon_visibility(O, chi_one()), ("v", "oo", "0"), ("v", "oo'", "0'")))
    A.add("Xa", lamppost(polygon_visibility(E, chi_alpha()), ("v", "oo", "0"), ("v", "oo'", "h")))
    A.join("CE", "pyr0", "TEF", "pyr0")
    A.join("CE", "pyr1", "TEO1", "pyr0")
    A.join("TEO1", "pyr1", "R", "frame")
    A.join("CE", "pyr2", "TEO2", "pyr0")
    A.join("TEO2", "pyr1", "X1", "pyr0")
    A.join("CE", "pyr3", "Xa", "pyr0")
    return A


def anchor(spec, provider: ArithmeticPolytopeProvider | None = None, budget: int | None = None) -> Gadget:
    """anch(alpha) with port "pentagon" (pyramid over F) and face "f_pentagon".

    The pentagon's edges are named oo, 0, oo', h, 0' in cyclic order.
    """
    A = anchor_pieces(spec, provider, budget)
    g = A.build(ports={"pentagon": ("TEF", "pyr1")}, faces={}, budget=budget)
    g.faces["f_pentagon"] = g.port("pentagon").element(("top", "b"))
    g.faces["pentagon"] = g.port("pentagon").facet
    return g


def anchor_size_lower_bound(spec: AlgebraicNumberSpec) -> int:
    """A cheap lower bound on the element count of anch(alpha).

    The connector on G has one pyramidal facet over G per relation plus
    one, each with 2(2k+2) elements for a k-gon G. For rational alpha the
    value and relation counts are bounded analytically, so huge integer
    chains are never enumerated.
    """
    c = spec.coefficients
    if spec.degree == 1:
        N = max([spec.b1, spec.b2] + [abs(x) for x in c])
        m, nrel = N + 2, max(N - 1, 1)
    else:
        prog = relation_program(spec)
        m, nrel = prog.m, sum(len(v) for v in prog.relations.values())
    k = 2 * m + 2
    return (nrel + 1) * 2 * (2 * k + 2)
