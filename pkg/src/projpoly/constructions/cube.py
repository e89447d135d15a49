"""Cube lattices and the stamp of the unit cube."""
from __future__ import annotations

from itertools import product as iproduct

from ..geometry import VPolytope, unit_cube
from ..poset import FaceLattice
from .assembly import Assembly, Gadget
from .gadgets import connector
from .tents import ConstructionError, VisibilitySpec, tent_gadget

MAX_DIM = 6


def cube_lattice(d: int) -> FaceLattice:
    """Faces of [0,1]^d as strings over "01*" (plus "bot"); "*"*d is the top."""
    if not 1 <= d <= MAX_DIM:
        raise ConstructionError(f"cube dimension must be in 1..{MAX_DIM}")
    words = ["".join(w) for w in iproduct("01*", repeat=d)]
    words.sort(key=lambda w: (w.count("*"), w))
    labels = ["bot"] + words
    idx = {w: i for i, w in enumerate(labels)}
    covers = []
    for w in words:
        if "*" not in w:
            covers.append((0, idx[w]))
        for i, c in enumerate(w):
            if c != "*":
                covers.append((idx[w], idx[w[:i] + "*" + w[i + 1:]]))
    return FaceLattice(labels, covers)


def cube_polytope(d: int) -> tuple[VPolytope, dict]:
    """[0,1]^d and the map from its vertex-index face labels to cube words."""
    if not 1 <= d <= MAX_DIM:
        raise ConstructionError(f"cube dimension must be in 1..{MAX_DIM}")
    C = unit_cube(d)
    names = {}
    for f, lab in enumerate(C.lattice.labels):
        vs = [C.vertices[i] for i in lab]
        if not vs:
            names[lab] = "bot"
            continue
        w = []
        for i in range(d):
            vals = {v[i] for v in vs}
            w.append("*" if len(vals) > 1 else str(int(next(iter(vals)))))
        names[lab] = "".join(w)
    return C, names


def cube_chi(d: int, i: int) -> VisibilitySpec:
    """chi_i(c) = + if c_i = 1, - if c_i = 0, 0 if c_i = *."""
    L = cube_lattice(d)
    chi = {}
    for f, w in enumerate(L.labels):
        if w == "bot":
            continue
        chi[f] = {"1": "+", "0": "-", "*": "0"}[w[i]]
    return VisibilitySpec(L, chi)


def cube_stamp_assembly(d: int) -> Assembly:
    if not 1 <= d <= 3:
        raise ConstructionError("cube stamps are built for d in 1..3")
    A = Assembly()
    A.add("conn", connector(d + 1, cube_lattice(d)))
    for i in range(d):
        A.add(f"tent{i}", tent_gadget(cube_chi(d, i)).pyramid())
        A.join("conn", f"pyr{i}", f"tent{i}", "base")
    return A


def cube_stamp(d: int, budget: int | None = None) -> Gadget:
    """conn(d+1, cube) glued to pyr(tent(chi_i)) for every coordinate i.

    The face "f_cube" is the base of the remaining connector pyramid, and
    the gadget keeps that pyramid as port "cube" for further gluing.
    """
    A = cube_stamp_assembly(d)
    L = cube_lattice(d)
    top = L.labels[L.top]
    g = A.build(ports={"cube": ("conn", f"pyr{d}")}, budget=budget, faces={})
    g.faces["f_cube"] = g.ports["cube"].element((top, "b"))
    return g
