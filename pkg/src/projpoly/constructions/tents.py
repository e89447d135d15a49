"""Tents and transmitters, combinatorial and geometric."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .. import linalg as la
from ..geometry import GeometryError, VPolytope, hull, lp_interior_functional
from ..glue import GlueError, GluingDiagram, GlueEdge, run_diagram
from ..poset import FaceLattice, LatticeError, dual, find_isomorphism, is_isomorphism, polygon_lattice, product, subposet
from ..predicates import PrismoidSpec
from ..projective import Flat, OrientedPoint, Projectivity, as_point, visibility_map
from .assembly import Gadget, Port, pyramid_port

SIGNS = ("+", "-", "0", "*")

# the apex segment {bot, +, -, top}
APEX = FaceLattice(["bot", "+", "-", "top"], [(0, 1), (0, 2), (1, 3), (2, 3)])
ALLOWED = {
    "+": ("bot", "+"),
    "-": ("bot", "-"),
    "0": ("bot", "top"),
    "*": ("bot", "+", "-", "top"),
}


class ConstructionError(ValueError):
    pass


@dataclass
class VisibilitySpec:
    """chi : base -> {+, -, 0, *} with chi(bot) = *; keyed by element id."""

    base: FaceLattice
    chi: dict

    def __post_init__(self):
        B = self.base
        chi = dict(self.chi)
        if chi.setdefault(B.bottom, "*") != "*":
            raise ConstructionError("chi(bot) must be '*'")
        missing = [f for f in range(len(B)) if f not in chi]
        if missing:
            raise ConstructionError(f"chi is not defined on {len(missing)} faces, e.g. {B.labels[missing[0]]!r}")
        for f, s in chi.items():
            if s not in SIGNS:
                raise ConstructionError(f"bad visibility value {s!r}")
        if chi[B.top] not in ("0", "*"):
            raise ConstructionError("chi(top) must be '0' or '*' for the tent to be bounded")
        self.chi = chi

    @classmethod
    def from_labels(cls, base: FaceLattice, by_label: dict) -> "VisibilitySpec":
        return cls(base, {base.id_of(k): v for k, v in by_label.items()})

    def by_label(self) -> dict:
        return {self.base.labels[f]: s for f, s in self.chi.items()}


def polygon_visibility(L: FaceLattice, edges: dict) -> VisibilitySpec:
    """Extend chi given on the edges of a polygon lattice to its vertices.

    A vertex is front (back) visible exactly when one of its two edges is;
    edges may be keyed by id or by label, and chi(top) = 0.
    """
    chi = {}
    for k, s in edges.items():
        chi[L.id_of(k) if L.has_label(k) else k] = s
    for e in L.elements_of_rank(1):
        if e not in chi:
            raise ConstructionError(f"edge {L.labels[e]!r} has no visibility value")
    for v in L.atoms():
        ss = [chi[e] for e in L.up[v]]
        front = any(s in "+*" for s in ss)
        back = any(s in "-*" for s in ss)
        chi[v] = {(True, True): "*", (True, False): "+", (False, True): "-", (False, False): "0"}[(front, back)]
    chi[L.top] = "0"
    chi[L.bottom] = "*"
    return VisibilitySpec(L, chi)


def tent_gadget(spec: VisibilitySpec) -> Gadget:
    """tent(chi) = {(f, a) : a in a(chi(f))} inside B x {bot, +, -, top}."""
    B = spec.base
    Pr = product(B, APEX)
    keep = []
    for f in range(len(B)):
        for a in ALLOWED[spec.chi[f]]:
            keep.append(f * 4 + APEX.id_of(a))
    try:
        T = subposet(Pr, keep)
    except LatticeError as exc:
        raise ConstructionError(f"tent is not bounded: {exc}") from exc
    bl = B.labels
    top_b, bot_b = bl[B.top], bl[B.bottom]
    faces = {"base": T.id_of((top_b, "bot")), "apex": T.id_of((bot_b, "top")),
             "apex+": T.id_of((bot_b, "+")), "apex-": T.id_of((bot_b, "-"))}
    for k, v in B.marks.items():
        faces[k] = T.id_of((bl[v], "bot"))
    ports = {"base": Port(faces["base"], {T.id_of((bl[x], "bot")): bl[x] for x in range(len(B))})}
    T.marks = dict(faces)
    return Gadget(T, ports, faces)


def tent(spec: VisibilitySpec) -> FaceLattice:
    return tent_gadget(spec).lattice


# geometric tents


@dataclass
class TentRealization:
    polytope: VPolytope
    spec: VisibilitySpec
    shift: list  # B was translated by -shift
    projectivity: Projectivity  # sends the shifted p to the horizon
    apex_direction: list

    def base_face(self) -> int:
        return self.polytope.face_id(range(self.polytope.nverts - 2))

    def apex_face(self) -> int:
        n = self.polytope.nverts
        return self.polytope.face_id([n - 2, n - 1])

    def recover_point(self) -> OrientedPoint:
        return recover_point(self)


def tent_geometric(B: VPolytope, p) -> TentRealization:
    """A tent with base a projective copy of B whose apex line passes through p.

    B is translated to its barycenter and sent by a projectivity fixing the
    hyperplane at infinity onto a copy for which p lies at infinity in
    some direction u. The tent is conv([B~;0], [0;1], [u;1]); the labelled
    face lattice is checked against tent(vis(p, B, .)).
    """
    p = as_point(p)
    d = B.ambient
    if B.dim != d:
        raise GeometryError("the base must be full-dimensional")
    if p.dim != d:
        raise GeometryError("point and polytope live in different dimensions")
    if p.is_finite and B.contains(p.point()):
        raise GeometryError("p lies in B")
    c = B.barycenter()
    Bc = [la.sub(list(v), c) for v in B.vertices]
    h = p.hvec()
    hc = la.sub(h[:d], la.scale(h[d], c)) + [h[d]]
    if hc[d] == 0:
        ell = [Fraction(0)] * d + [Fraction(1)]
    else:
        sol = lp_interior_functional(hull(Bc), la.scale(1 / hc[d], hc[:d]))
        if sol is None:
            raise GeometryError("no hyperplane through p avoids B")
        a, a0 = sol
        ell = list(a) + [a0]
    M = [[Fraction(int(i == j)) for j in range(d + 1)] for i in range(d)] + [ell]
    pi = Projectivity(M)
    Bt = []
    for v in Bc:
        w = la.dot(ell[:d], v) + ell[d]
        Bt.append(la.scale(1 / w, v))
    u = la.matvec(M, hc)[:d]
    pts = [list(v) + [Fraction(0)] for v in Bt]
    pts.append([Fraction(0)] * d + [Fraction(1)])
    pts.append(list(u) + [Fraction(1)])
    T = hull(pts)
    n = len(Bt)
    if T.nverts != n + 2:
        raise GeometryError("tent lost a vertex")
    spec = VisibilitySpec(B.lattice, visibility_map(p, B))
    abstract = tent(spec)
    m = []
    for lab in T.lattice.labels:
        base = tuple(i for i in lab if i < n)
        a = {(False, False): "bot", (True, False): "-", (False, True): "+", (True, True): "top"}[
            (n in lab, n + 1 in lab)]
        key = (base, a)
        if not abstract.has_label(key):
            raise GeometryError(f"geometric tent has a face {key!r} missing from tent(chi)")
        m.append(abstract.id_of(key))
    if not is_isomorphism(T.lattice, abstract, m):
        raise GeometryError("geometric tent does not realize tent(vis(p, B))")
    return TentRealization(T, spec, c, pi, u)


def recover_point(R: TentRealization) -> OrientedPoint:
    """projcl(base) meet projcl(apex), pulled back to the coordinates of B."""
    T = R.polytope
    n = T.nverts
    base = Flat([list(v) + [Fraction(1)] for v in T.vertices[:n - 2]])
    apex = Flat([list(v) + [Fraction(1)] for v in T.vertices[n - 2:]])
    q = base.meet(apex).as_point().hvec()
    d = len(q) - 2
    if q[d] != 0:
        raise GeometryError("meet point is not in the base hyperplane")
    y = q[:d] + [q[d + 1]]
    x = la.solve(R.projectivity.matrix, y)
    c = R.shift
    back = la.add(x[:d], la.scale(x[d], c)) + [x[d]]
    return OrientedPoint(tuple(back))


# transmitters


@dataclass
class TransmitterSpec:
    """trmr(P, F0, F1) over an abstract prismoid; bottoms are added to F0, F1."""

    prismoid: PrismoidSpec
    F0: set = field(default_factory=set)
    F1: set = field(default_factory=set)

    def __post_init__(self):
        b0, b1 = self.prismoid.base0, self.prismoid.base1
        self.F0 = set(self.F0) | {b0.bottom}
        self.F1 = set(self.F1) | {b1.bottom}
        if b0.top in self.F0 or b1.top in self.F1:
            raise ConstructionError("a base top may not lie in F0 or F1")


def _transmitter_chi(spec: TransmitterSpec, P: FaceLattice) -> dict:
    b0, b1 = spec.prismoid.base0, spec.prismoid.base1
    chi = {}
    for x, (l0, l1) in enumerate(P.labels):
        in0 = b0.id_of(l0) in spec.F0
        in1 = b1.id_of(l1) in spec.F1
        chi[x] = {(True, False): "-", (False, True): "+", (False, False): "0", (True, True): "*"}[(in0, in1)]
    return chi


def transmitter_gadget(spec: TransmitterSpec) -> Gadget:
    """Ports "pyr0", "pyr1" are the pyramids over the two bases; coordinates
    are (base label, "b"|"a"). "prismoid" is the base facet of the tent."""
    b0, b1 = spec.prismoid.base0, spec.prismoid.base1
    P = spec.prismoid.lattice()
    Tg = tent_gadget(VisibilitySpec(P, _transmitter_chi(spec, P)))
    T = Tg.lattice
    l0, l1 = b0.labels, b1.labels
    bot0, bot1, top0, top1 = l0[b0.bottom], l1[b1.bottom], l0[b0.top], l1[b1.top]
    f0 = T.id_of(((top0, bot1), "+"))
    f1 = T.id_of(((bot0, top1), "-"))

    def split0(lab):
        (x, _), a = lab
        return (x, "b" if a == "bot" else "a")

    def split1(lab):
        (_, y), a = lab
        return (y, "b" if a == "bot" else "a")

    ports = {"pyr0": pyramid_port(T, f0, split0), "pyr1": pyramid_port(T, f1, split1),
             "prismoid": Tg.ports["base"]}
    faces = {"base0": T.id_of(((top0, bot1), "bot")), "base1": T.id_of(((bot0, top1), "bot")),
             "pyr0": f0, "pyr1": f1, "prismoid": Tg.faces["base"]}
    T.marks = dict(faces)
    return Gadget(T, ports, faces)


def transmitter(spec: TransmitterSpec) -> FaceLattice:
    return transmitter_gadget(spec).lattice


def prism_spec(B: FaceLattice) -> PrismoidSpec:
    """pris(B) = {(f, bot), (bot, f), (f, f)}."""
    return PrismoidSpec(B, B, {(f, f) for f in range(len(B))})


def full_transmitter_gadget(B: FaceLattice) -> Gadget:
    return transmitter_gadget(TransmitterSpec(prism_spec(B)))


def full_transmitter(B: FaceLattice) -> FaceLattice:
    return full_transmitter_gadget(B).lattice


@dataclass
class Whittle:
    """Whittle the vertex v of B1 by the polytope W at its vertex w;
    phi maps [v, top] of B1 onto [w, top] of W (found when omitted)."""

    v: int
    W: FaceLattice
    w: int
    phi: dict | None = None


def whittled_base(B1: FaceLattice, whittles: list) -> FaceLattice:
    """B1 whittled at several vertices at once; labels ("0", l) for faces of
    B1 and (str(i+1), l) for new faces coming from the i-th polytope."""
    d = B1.rank[B1.top]
    seen = set()
    nodes = [("0", dual(B1))]
    edges = []
    for i, wh in enumerate(whittles):
        if wh.v not in B1.atoms():
            raise ConstructionError(f"{B1.labels[wh.v]!r} is not a vertex")
        if len(B1.up[wh.v]) != d:
            raise ConstructionError(f"vertex {B1.labels[wh.v]!r} is not simple")
        if wh.v in seen:
            raise ConstructionError("a vertex may be whittled only once")
        seen.add(wh.v)
        name = str(i + 1)
        nodes.append((name, dual(wh.W)))
        edges.append(GlueEdge("0", wh.v, name, wh.w, wh.phi))
    try:
        return dual(run_diagram(GluingDiagram(nodes, edges)))
    except GlueError as exc:
        raise ConstructionError(f"whittling failed: {exc}") from exc


def forgetful_spec(B1: FaceLattice, whittles: list) -> tuple[TransmitterSpec, FaceLattice]:
    """The forgetful transmitter T_{B0,B1} where B0 is B1 whittled at the vertices V."""
    B0 = whittled_base(B1, whittles)
    V = {wh.v for wh in whittles}
    sides = set()
    for f in range(len(B1)):
        if f not in V and f != B1.bottom:
            sides.add((B0.id_of(("0", B1.labels[f])), f))
    for i, wh in enumerate(whittles):
        up = set(wh.W.above(wh.w))
        for x in range(len(wh.W)):
            if x in up or x == wh.W.bottom:
                continue
            sides.add((B0.id_of((str(i + 1), wh.W.labels[x])), wh.v))
    return TransmitterSpec(PrismoidSpec(B0, B1, sides), set(), V), B0


def forgetful_transmitter_gadget(B1: FaceLattice, whittles: list) -> Gadget:
    spec, _ = forgetful_spec(B1, whittles)
    return transmitter_gadget(spec)


def forgetful_transmitter(B1: FaceLattice, whittles: list) -> FaceLattice:
    return forgetful_transmitter_gadget(B1, whittles).lattice


def polygon_whittles(big: list, small: list) -> tuple[FaceLattice, list, dict]:
    """Whittles turning the polygon with edges ``small`` into the one with edges ``big``.

    ``small`` must be a cyclic subsequence of ``big`` (same orientation)
    with at least three edges. Returns (B1, whittles, name) where name maps
    each edge of the whittled base to its name in ``big``.
    """
    if len(set(big)) != len(big) or len(set(small)) != len(small):
        raise ConstructionError("edge names must be distinct")
    pos = {e: i for i, e in enumerate(big)}
    if any(e not in pos for e in small):
        raise ConstructionError("small polygon uses an edge not in the big one")
    k = len(small)
    idx = [pos[e] for e in small]
    start = idx.index(min(idx))
    rot = idx[start:] + idx[:start]
    if rot != sorted(rot):
        raise ConstructionError("small polygon is not a cyclic subsequence of the big one")
    B1 = polygon_lattice(small)
    whittles = []
    n = len(big)
    for i in range(k):
        a, b = small[i - 1], small[i]
        gap = []
        j = (pos[a] + 1) % n
        while big[j] != b:
            gap.append(big[j])
            j = (j + 1) % n
        if not gap:
            continue
        W = polygon_lattice([a] + gap + [b])
        v = B1.id_of(("v", a, b))
        w = W.id_of(("v", b, a))
        phi = {v: w, B1.id_of(a): W.id_of(a), B1.id_of(b): W.id_of(b), B1.top: W.top}
        whittles.append(Whittle(v, W, w, phi))
    return B1, whittles


def _polygon_coord(L: FaceLattice, edge_name, names: list):
    """Map a polygon lattice onto polygon_lattice(names) labels via edge names."""
    k = len(names)
    ename = {}
    for e in L.elements_of_rank(1):
        ename[e] = edge_name(L.labels[e])
    vert = {}
    for i in range(k):
        vert[frozenset((names[i - 1], names[i]))] = ("v", names[i - 1], names[i])
    out = {L.bottom: "bot", L.top: "top"}
    for e, nm in ename.items():
        out[e] = nm
    for v in L.atoms():
        out[v] = vert[frozenset(ename[e] for e in L.up[v])]
    return out


def polygon_forgetful_gadget(big: list, small: list) -> Gadget:
    """Forgetful transmitter from the polygon ``big`` down to ``small``.

    Both ports carry polygon_lattice coordinates, pyr0 for ``big`` and
    pyr1 for ``small``.
    """
    B1, whittles = polygon_whittles(big, small)
    if not whittles:
        raise ConstructionError("nothing to forget")
    spec, B0 = forgetful_spec(B1, whittles)
    g = transmitter_gadget(spec)

    def edge_name(lab):
        return lab[1]

    c0 = _polygon_coord(B0, edge_name, list(big))
    by0 = {B0.labels[x]: c for x, c in c0.items()}
    p0 = g.ports["pyr0"].relabel(lambda c: (by0[c[0]], c[1]))
    return Gadget(g.lattice, {"pyr0": p0, "pyr1": g.ports["pyr1"], "prismoid": g.ports["prismoid"]}, g.faces)


# geometric transmitters


def geometric_transmitter(B0: VPolytope, B1: VPolytope) -> tuple[VPolytope, Gadget]:
    """trmr(B0, B1) = conv([B0;0;0], [B1;1;0], [0;0;1], [0;1;1]) with ports over both bases.

    Port coordinates are (vertex-tuple label in B0 or B1, "b"|"a").
    """
    d = B0.ambient
    if B1.ambient != d:
        raise GeometryError("bases live in different dimensions")
    z = [Fraction(0)] * d
    pts = [list(v) + [Fraction(0), Fraction(0)] for v in B0.vertices]
    pts += [list(v) + [Fraction(1), Fraction(0)] for v in B1.vertices]
    pts += [z + [Fraction(0), Fraction(1)], z + [Fraction(1), Fraction(1)]]
    T = hull(pts)
    n0, n1 = B0.nverts, B1.nverts
    if T.nverts != n0 + n1 + 2:
        raise GeometryError("transmitter lost a vertex")
    a0, a1 = n0 + n1, n0 + n1 + 1
    L = T.lattice
    f0 = T.face_id(list(range(n0)) + [a0])
    f1 = T.face_id(list(range(n0, n0 + n1)) + [a1])

    def split0(lab):
        return (tuple(i for i in lab if i < n0), "a" if a0 in lab else "b")

    def split1(lab):
        return (tuple(i - n0 for i in lab if n0 <= i < n0 + n1), "a" if a1 in lab else "b")

    ports = {"pyr0": pyramid_port(L, f0, split0), "pyr1": pyramid_port(L, f1, split1)}
    faces = {"base0": T.face_id(range(n0)), "base1": T.face_id(range(n0, n0 + n1)), "pyr0": f0, "pyr1": f1}
    return T, Gadget(L, ports, faces)


def check_transmitter_bases(g: Gadget, B0: FaceLattice, B1: FaceLattice) -> bool:
    """The base faces of a transmitter reproduce the two base lattices."""
    from ..poset import lower_interval
    L = g.lattice
    ok0 = find_isomorphism(lower_interval(L, g.faces["base0"]), B0) is not None
    ok1 = find_isomorphism(lower_interval(L, g.faces["base1"]), B1) is not None
    return ok0 and ok1
