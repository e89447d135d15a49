"""File formats.

Canonical files hold exact rationals written as "p/q" strings. The OFF
export is the only float output and says so in its header.
"""
from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from pathlib import Path

from . import linalg as la
from .geometry import Fan, VPolytope, hull
from .glue import GlueEdge, GluingDiagram
from .poset import FaceLattice

_SPLIT = re.compile(r"[\s,;]+")


class FormatError(ValueError):
    pass


def _fractions(line: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in _SPLIT.split(line.strip()) if t]
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad number in {line!r}: {exc}") from None


def _rows(text: str) -> list[list[Fraction]]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(_fractions(line))
    return rows


def fstr(x) -> str:
    return str(Fraction(x))


# polytopes


def parse_poly(text: str) -> VPolytope:
    """One vertex per line, coordinates as fractions; '#' starts a comment."""
    rows = _rows(text)
    if not rows:
        raise FormatError("polytope file has no vertices")
    if len({len(r) for r in rows}) != 1:
        raise FormatError("vertices have different dimensions")
    return hull(rows)


def dump_poly(P: VPolytope) -> str:
    head = f"# polytope: dim {P.dim}, ambient {P.ambient}, {P.nverts} vertices\n"
    return head + "".join(" ".join(fstr(x) for x in v) + "\n" for v in P.vertices)


def read_poly(path) -> VPolytope:
    return parse_poly(Path(path).read_text())


def write_poly(P: VPolytope, path) -> None:
    Path(path).write_text(dump_poly(P))


def dump_off(P: VPolytope) -> str:
    """Lossy float export for viewers (2D and 3D polytopes)."""
    if P.ambient not in (2, 3) or P.dim != P.ambient:
        raise FormatError("OFF export needs a full-dimensional polygon or 3-polytope")
    pts = [[float(x) for x in v] + ([0.0] if P.ambient == 2 else []) for v in P.vertices]
    L = P.lattice
    faces = [L.top] if P.ambient == 2 else [f for f in range(len(L)) if L.rank[f] == 2]
    cycles = [_cyclic(P, f, pts) for f in faces]
    out = ["OFF", "# LOSSY: float coordinates, not a canonical projpoly file",
           f"{len(pts)} {len(cycles)} 0"]
    out += [" ".join(repr(x) for x in p) for p in pts]
    out += [" ".join(map(str, [len(c)] + c)) for c in cycles]
    return "\n".join(out) + "\n"


def _cyclic(P: VPolytope, f: int, pts) -> list[int]:
    idx = list(P.face_vertex_indices(f))
    c = [sum(pts[i][k] for i in idx) / len(idx) for k in range(3)]
    if P.ambient == 2:
        n = [0.0, 0.0, 1.0]
    else:
        F = P.facets[P.facets_containing(f)[0]]
        n = [float(x) for x in F.halfspace.normal]
    u = [pts[idx[0]][k] - c[k] for k in range(3)]
    w = [n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]]

    def ang(i):
        v = [pts[i][k] - c[k] for k in range(3)]
        return math.atan2(sum(a * b for a, b in zip(v, w)), sum(a * b for a, b in zip(v, u)))
    return sorted(idx, key=ang)


# lattices


def dump_lattice(L: FaceLattice) -> str:
    return json.dumps(L.to_dict(), indent=1, sort_keys=True) + "\n"


def parse_lattice(text: str) -> FaceLattice:
    try:
        data = json.loads(text)
        return FaceLattice.from_dict(data)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"not a lattice file: {exc}") from None


def read_lattice(path) -> FaceLattice:
    return parse_lattice(Path(path).read_text())


def write_lattice(L: FaceLattice, path) -> None:
    Path(path).write_text(dump_lattice(L))


# fans


def fan_to_dict(F: Fan) -> dict:
    """Cones with primitive integer generators, in label order."""
    from .poset import _label_to_json
    cones = []
    for lab, C in F.cones.items():
        rays, lin = C.canonical()
        cones.append({"label": _label_to_json(lab), "dim": C.dim,
                      "rays": [list(r) for r in rays], "lineality": [list(la.primitive(v)) for v in lin]})
    return {"ambient": F.ambient, "cones": cones}


def dump_fan(F: Fan) -> str:
    return json.dumps(fan_to_dict(F), indent=1) + "\n"


# matrices and vectors


def parse_matrix(text: str) -> list[list[Fraction]]:
    rows = _rows(text)
    if not rows or len({len(r) for r in rows}) != 1:
        raise FormatError("matrix rows are missing or ragged")
    return rows


def parse_vector(text: str) -> list[Fraction]:
    rows = _rows(text)
    if not rows:
        raise FormatError("empty vector")
    return [x for r in rows for x in r]


def dump_matrix(M) -> str:
    return "".join(" ".join(fstr(x) for x in r) + "\n" for r in M)


def dump_vector(v) -> str:
    return " ".join(fstr(x) for x in v) + "\n"


def read_matrix(path):
    return parse_matrix(Path(path).read_text())


def read_vector(path):
    return parse_vector(Path(path).read_text())


# gluing diagrams


def diagram_to_dict(D: GluingDiagram) -> dict:
    edges = []
    for e in D.edges:
        phi = e.phi
        if phi is not None and not isinstance(phi, dict):
            phi = dict(enumerate(phi))
        edges.append({"a": e.a, "facet_a": e.facet_a, "b": e.b, "facet_b": e.facet_b,
                      "phi": None if phi is None else sorted([int(k), int(v)] for k, v in phi.items())})
    return {"nodes": [{"name": n, "lattice": L.to_dict()} for n, L in D.nodes], "edges": edges,
            "output_face": list(D.output_face) if D.output_face else None,
            "outputs": {k: list(v) for k, v in D.outputs.items()}}


def diagram_from_dict(data: dict) -> GluingDiagram:
    try:
        nodes = [(n["name"], FaceLattice.from_dict(n["lattice"])) for n in data["nodes"]]
        edges = [GlueEdge(e["a"], e["facet_a"], e["b"], e["facet_b"],
                          None if e.get("phi") is None else {a: b for a, b in e["phi"]}) for e in data["edges"]]
        out = tuple(data["output_face"]) if data.get("output_face") else None
        outputs = {k: tuple(v) for k, v in data.get("outputs", {}).items()}
    except (KeyError, TypeError) as exc:
        raise FormatError(f"not a diagram file: {exc}") from None
    return GluingDiagram(nodes, edges, out, outputs)


def dump_diagram(D: GluingDiagram) -> str:
    return json.dumps(diagram_to_dict(D)) + "\n"


def parse_diagram(text: str) -> GluingDiagram:
    try:
        return diagram_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise FormatError(f"not a diagram file: {exc}") from None
