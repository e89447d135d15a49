"""Connectors, adapters and lampposts."""
from __future__ import annotations

from ..poset import FaceLattice, lower_interval, pyramid
from ..predicates import PrismoidSpec
from .assembly import Assembly, Gadget, Port, pyramid_port
from .tents import APEX, ALLOWED, ConstructionError, TransmitterSpec, VisibilitySpec, full_transmitter_gadget, transmitter_gadget


def _two_port_names(g: Gadget) -> Gadget:
    return Gadget(g.lattice, {"pyr0": g.ports["pyr0"], "pyr1": g.ports["pyr1"]},
                  {"pyr0": g.faces["pyr0"], "pyr1": g.faces["pyr1"]})


def _conn4(B: FaceLattice) -> Gadget:
    t = full_transmitter_gadget(B)
    A = Assembly()
    A.add("x", t)
    A.add("y", t)
    A.join("x", "prismoid", "y", "prismoid")
    names = [("x", "pyr0"), ("x", "pyr1"), ("y", "pyr0"), ("y", "pyr1")]
    return A.build(ports={f"pyr{i}": k for i, k in enumerate(names)},
                   faces={f"pyr{i}": k for i, k in enumerate(names)})


def connector(n: int, B: FaceLattice) -> Gadget:
    """conn(n, B): ports "pyr0".."pyr{n-1}", each a pyramid over B with
    coordinates (label in B, "b"|"a")."""
    if n < 2:
        raise ConstructionError("a connector needs n >= 2")
    if n == 2:
        return _two_port_names(full_transmitter_gadget(B))
    if n % 2:
        g = connector(n + 1, B)
        last = f"pyr{n}"
        return Gadget(g.lattice, {k: v for k, v in g.ports.items() if k != last},
                      {k: v for k, v in g.faces.items() if k != last})
    c4 = _conn4(B)
    if n == 4:
        return c4
    k = n // 2 - 1
    A = Assembly()
    for i in range(k):
        A.add(f"c{i}", c4)
    for i in range(k - 1):
        A.join(f"c{i}", "pyr3", f"c{i + 1}", "pyr0")
    free = [("c0", "pyr0"), ("c0", "pyr1"), ("c0", "pyr2")]
    for i in range(1, k - 1):
        free += [(f"c{i}", "pyr1"), (f"c{i}", "pyr2")]
    free += [(f"c{k - 1}", "pyr1"), (f"c{k - 1}", "pyr2"), (f"c{k - 1}", "pyr3")]
    assert len(free) == n
    return A.build(ports={f"pyr{i}": key for i, key in enumerate(free)},
                   faces={f"pyr{i}": key for i, key in enumerate(free)})


def port_base(g: Gadget, port: str, B: FaceLattice) -> int:
    """Base of a pyramidal port over B, the copy of B inside it."""
    return g.port(port).element((B.labels[B.top], "b"))


def _chain_to_facet(F: FaceLattice, g: int) -> list[int]:
    """Lexicographically least chain g < ... < coatom (by element id)."""
    chain = [g]
    x = g
    while F.top not in F.up[x]:
        x = min(y for y in F.up[x] if y != F.top)
        chain.append(x)
    return chain


def adapter(F: FaceLattice, g) -> Gadget:
    """adapt(F, g): ports "aF" (lower interval F) and "ag" (an iterated pyramid over [bot, g]).

    ``g`` is an element id or label of F. The stellating chain is the
    lexicographically least one, recorded in faces["chain<i>"].
    """
    if not isinstance(g, int) or F.has_label(g):
        g = F.id_of(g)
    if g == F.bottom:
        raise ConstructionError("adapter needs g above the bottom")
    if g == F.top:
        raise ConstructionError("adapter needs a proper face g")
    if F.top in F.up[g]:
        P = pyramid(F)
        pid = P.id_of
        lab = F.labels
        aF = pid((lab[F.top], "b"))
        ag = pid((lab[g], "a"))
        ports = {"aF": Port(aF, {x: P.labels[x][0] for x in P.below(aF)}),
                 "ag": pyramid_port(P, ag, lambda l: l)}
        return Gadget(P, ports, {"aF": aF, "ag": ag, "chain0": pid((lab[g], "b"))})
    h = _chain_to_facet(F, g)[-1]
    inner = adapter(lower_interval(F, h), F.labels[g]).pyramid()
    P = pyramid(F)
    lab = F.labels
    aF = P.id_of((lab[F.top], "b"))
    fh = P.id_of((lab[h], "a"))
    outer = Gadget(P, {"aF": Port(aF, {x: P.labels[x][0] for x in P.below(aF)}),
                       "h": pyramid_port(P, fh, lambda l: l)}, {"aF": aF})
    A = Assembly()
    A.add("outer", outer)
    A.add("inner", inner)
    A.join("outer", "h", "inner", "aF")
    return A.build(ports={"aF": ("outer", "aF"), "ag": ("inner", "ag")},
                   faces={"aF": ("outer", "aF")})


def lamppost_spec(chi: VisibilitySpec, f0, f1) -> TransmitterSpec:
    B = chi.base
    f0 = B.id_of(f0) if B.has_label(f0) else f0
    f1 = B.id_of(f1) if B.has_label(f1) else f1
    if B.leq(f0, f1) or B.leq(f1, f0):
        raise ConstructionError("lamppost faces must be incomparable")
    sides = {(f, APEX.id_of(a)) for f in range(len(B)) for a in ALLOWED[chi.chi[f]]}
    up = set(B.above(f0)) | set(B.above(f1))
    F0 = {f for f in range(len(B)) if f not in up}
    return TransmitterSpec(PrismoidSpec(B, APEX, sides), F0, set())


def lamppost(chi: VisibilitySpec, f0, f1) -> Gadget:
    """lamp(chi, f0, f1); port "pyr0" is the pyramid over the base of chi."""
    return transmitter_gadget(lamppost_spec(chi, f0, f1))
