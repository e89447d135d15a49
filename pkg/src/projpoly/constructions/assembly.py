"""Pieces with named gluing ports, and diagrams built from them.

A port is a facet together with coordinates: each element of the facet's
lower interval is tagged with a canonical label (for a pyramid over a
base lattice B this is ``(label in B, "b" | "a")``, matching
``poset.pyramid``). Two ports glue when their coordinate sets agree, and
the gluing map is read off by matching coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..glue import BudgetExceeded, GlueEdge, GlueError, GluingDiagram, run_diagram
from ..poset import FaceLattice, pyramid


@dataclass
class Port:
    facet: int
    coords: dict  # element id of [bot, facet] -> canonical label

    def element(self, label) -> int:
        for k, v in self.coords.items():
            if v == label:
                return k
        raise KeyError(label)

    def relabel(self, fn) -> "Port":
        return Port(self.facet, {k: fn(v) for k, v in self.coords.items()})


@dataclass
class Gadget:
    """A lattice with gluing ports and named distinguished faces."""

    lattice: FaceLattice
    ports: dict = field(default_factory=dict)
    faces: dict = field(default_factory=dict)

    def port(self, name: str) -> Port:
        try:
            return self.ports[name]
        except KeyError:
            raise GlueError(f"no port named {name!r}; have {sorted(self.ports)}") from None

    def face(self, name: str) -> int:
        return self.faces[name]

    def __len__(self):
        return len(self.lattice)

    def pyramid(self) -> "Gadget":
        """pyr of the piece; every port p becomes the pyramid over it."""
        L = self.lattice
        P = pyramid(L)
        pid = P.id_of
        ports = {}
        for name, p in self.ports.items():
            lab = L.labels
            coords = {}
            for x, c in p.coords.items():
                coords[pid((lab[x], "b"))] = (c, "b")
                coords[pid((lab[x], "a"))] = (c, "a")
            ports[name] = Port(pid((lab[p.facet], "a")), coords)
        faces = {k: pid((L.labels[v], "b")) for k, v in self.faces.items()}
        faces["base"] = pid((L.labels[L.top], "b"))
        return Gadget(P, ports, faces)


def pyramid_port(L: FaceLattice, facet: int, split) -> Port:
    """Port on a facet that is a pyramid; ``split(label)`` gives (base coordinate, "b"|"a")."""
    return Port(facet, {x: split(L.labels[x]) for x in L.below(facet)})


def port_map(La: FaceLattice, pa: Port, Lb: FaceLattice, pb: Port) -> dict:
    inv = {}
    for k, v in pb.coords.items():
        inv[v] = k
    if len(inv) != len(pb.coords) or len(pa.coords) != len(inv):
        raise GlueError("ports have different sizes")
    try:
        return {x: inv[c] for x, c in pa.coords.items()}
    except KeyError as exc:
        raise GlueError(f"port coordinate {exc.args[0]!r} has no partner") from None


class Assembly:
    """Named gadgets and port-to-port gluings; ``build`` runs the diagram."""

    def __init__(self):
        self.order: list[str] = []
        self.nodes: dict[str, Gadget] = {}
        self.edges: list[tuple[str, str, str, str]] = []
        self.used: set = set()

    def add(self, name: str, g: Gadget) -> str:
        if name in self.nodes:
            raise GlueError(f"duplicate node {name!r}")
        self.nodes[name] = g
        self.order.append(name)
        return name

    def join(self, a: str, pa: str, b: str, pb: str) -> None:
        for key in ((a, pa), (b, pb)):
            if key in self.used:
                raise GlueError(f"port {key} is already glued")
            self.used.add(key)
        self.edges.append((a, pa, b, pb))

    def total_elements(self) -> int:
        return sum(len(g) for g in self.nodes.values())

    def diagram(self) -> GluingDiagram:
        D = GluingDiagram([(n, self.nodes[n].lattice) for n in self.order])
        for a, pa, b, pb in self.edges:
            ga, gb = self.nodes[a], self.nodes[b]
            Pa, Pb = ga.port(pa), gb.port(pb)
            D.edges.append(GlueEdge(a, Pa.facet, b, Pb.facet, port_map(ga.lattice, Pa, gb.lattice, Pb)))
        return D

    def free_ports(self) -> list[tuple[str, str]]:
        return [(n, p) for n in self.order for p in self.nodes[n].ports if (n, p) not in self.used]

    def build(self, ports: dict | None = None, faces: dict | None = None,
              budget: int | None = None) -> Gadget:
        """Glue everything. ``ports``/``faces`` map new names to (node, name);
        by default every free port and face is exported as "node.name"."""
        if budget is not None and self.total_elements() > budget:
            raise BudgetExceeded(self.total_elements(), budget)
        L, where = run_diagram(self.diagram(), with_map=True)
        if ports is None:
            ports = {f"{n}.{p}": (n, p) for n, p in self.free_ports()}
        if faces is None:
            faces = {f"{n}.{k}": (n, k) for n in self.order for k in self.nodes[n].faces}
        out_ports = {}
        for new, (n, p) in ports.items():
            if (n, p) in self.used:
                raise GlueError(f"port {n}.{p} was glued and cannot be exported")
            P = self.nodes[n].port(p)
            out_ports[new] = Port(where[(n, P.facet)], {where[(n, x)]: c for x, c in P.coords.items()})
        out_faces = {}
        for new, (n, k) in faces.items():
            v = where[(n, self.nodes[n].faces[k])]
            if v < 0:
                raise GlueError(f"face {n}.{k} was glued away")
            out_faces[new] = v
        return Gadget(L, out_ports, out_faces)
