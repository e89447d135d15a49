"""Stamps: combinatorial polytopes with a face forced to be a given polytope."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..geometry import VPolytope, intersect_halfspaces
from ..glue import BudgetExceeded, check_glue_map
from ..poset import check_lattice
from .algebra import AlgebraicNumberSpec
from .anchors import StubArithmeticProvider, anchor, anchor_size_lower_bound
from .assembly import Assembly, Gadget
from .cube import cube_polytope, cube_stamp
from .gadgets import adapter, connector
from .pentagons import normalize_pose, pentagon_pairs
from .tents import ConstructionError, geometric_transmitter

DEFAULT_BUDGET = 2 * 10 ** 5


def rational_anchor_spec(alpha: Fraction) -> AlgebraicNumberSpec:
    """den x - num, isolated in (0, 1)."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ConstructionError("anchor values lie strictly between 0 and 1")
    return AlgebraicNumberSpec([-alpha.numerator, alpha.denominator], 1, 1)


@dataclass
class StampManifest:
    """The pieces and gluing edges of a stamp too large to glue at once."""

    pieces: dict  # node -> FaceLattice
    edges: list  # (node a, facet a, node b, facet b, phi)
    output: tuple  # (node, face id) of f_P before gluing
    summary: dict = field(default_factory=dict)
    deferred: dict = field(default_factory=dict)  # node -> description of an unbuilt piece
    deferred_edges: list = field(default_factory=list)  # (node a, port a, node b, port b)

    @property
    def total_elements(self) -> int:
        """Built elements plus lower bounds for deferred pieces."""
        return sum(len(L) for L in self.pieces.values()) + sum(
            d["elements_lower_bound"] for d in self.deferred.values())

    def validate(self) -> None:
        for name, L in self.pieces.items():
            r = check_lattice(L)
            if not r.ok:
                raise ConstructionError(f"piece {name} is not a valid lattice: {r}")
        for a, fa, b, fb, phi in self.edges:
            check_glue_map(self.pieces[a], fa, self.pieces[b], fb, phi)


@dataclass
class StampResult:
    gadget: Gadget | None
    manifest: StampManifest | None
    pose: object
    polytope: VPolytope  # P in the normalized pose
    pairs: dict  # facet index -> pentagon pairs

    @property
    def lattice(self):
        return self.gadget.lattice if self.gadget else None

    @property
    def f_P(self) -> int:
        return self.gadget.faces["f_P"]


def _relabel_anchor(anch: Gadget, pair, depth: int) -> Gadget:
    """Rename the anchor's pentagon coordinates to Q_f labels and lift it depth times."""
    inv = {v: pair.Q.lattice.labels[k] for k, v in pair.face_labels().items()}
    port = anch.ports["pentagon"].relabel(lambda c: (inv[c[0]], c[1]))
    g = Gadget(anch.lattice, {"pentagon": port}, {"f_pentagon": anch.faces["f_pentagon"]})
    for _ in range(depth):
        g = g.pyramid()
    return g


def stamp_assembly(P: VPolytope, provider=None, seed: int = 0, anchor_cache: dict | None = None,
                   budget: int | None = None):
    """The stamp's assembly. Anchors whose size bound exceeds ``budget`` are
    not built; they are returned in ``deferred`` as (spec, bound, port)."""
    provider = provider or StubArithmeticProvider()
    d = P.ambient
    if P.dim != d:
        raise ConstructionError("stamps need a full-dimensional polytope")
    if not 2 <= d <= 3:
        raise ConstructionError("stamps are assembled for d in 2..3")
    pose, Pn = normalize_pose(P, seed)
    C, names = cube_polytope(d)
    hs = [F.halfspace for F in Pn.facets]
    Q = intersect_halfspaces(C, hs)
    A = Assembly()
    nf = len(hs)
    A.add("CQ", connector(2 + nf, Q.lattice))
    _, t = geometric_transmitter(Q, Pn)
    A.add("TQP", t)
    A.join("CQ", "pyr0", "TQP", "pyr0")
    _, t = geometric_transmitter(Q, C)
    t.ports["pyr1"] = t.ports["pyr1"].relabel(lambda c: (names[c[0]], c[1]))
    A.add("TQC", t)
    A.add("Scube", cube_stamp(d))
    A.join("CQ", "pyr1", "TQC", "pyr0")
    A.join("TQC", "pyr1", "Scube", "cube")
    anchor_cache = {} if anchor_cache is None else anchor_cache
    deferred = {}
    all_pairs = {}
    for j, h in enumerate(hs):
        Qf = intersect_halfspaces(C, [h])
        pairs = pentagon_pairs(h, d, Qf)
        all_pairs[j] = pairs
        _, t = geometric_transmitter(Q, Qf)
        A.add(f"TQ{j}", t)
        A.join("CQ", f"pyr{2 + j}", f"TQ{j}", "pyr0")
        A.add(f"C{j}", connector(1 + len(pairs), Qf.lattice))
        A.join(f"TQ{j}", "pyr1", f"C{j}", "pyr0")
        for i, pair in enumerate(pairs):
            name = f"anch{j}_{i}"
            if d == 2:
                host, hport = f"C{j}", f"pyr{1 + i}"
            else:
                ad = adapter(Qf.lattice, pair.pentagon).pyramid()
                A.add(f"adapt{j}_{i}", ad)
                A.join(f"C{j}", f"pyr{1 + i}", f"adapt{j}_{i}", "aF")
                host, hport = f"adapt{j}_{i}", "ag"
            spec = rational_anchor_spec(pair.alpha)
            bound = anchor_size_lower_bound(spec)
            if pair.alpha not in anchor_cache and not (budget is not None and bound > budget):
                try:
                    anchor_cache[pair.alpha] = anchor(spec, provider, budget)
                except BudgetExceeded as exc:
                    bound = max(bound, exc.size)
            if pair.alpha not in anchor_cache:
                deferred[name] = {"kind": "anchor", "alpha": str(pair.alpha), "spec": spec.dump(),
                                  "pyramids": d - 2, "elements_lower_bound": bound,
                                  "host": (host, hport)}
                continue
            A.add(name, _relabel_anchor(anchor_cache[pair.alpha], pair, d - 2))
            A.join(host, hport, name, "pentagon")
    return A, pose, Pn, all_pairs, deferred


def stamp(P: VPolytope, provider=None, budget: int | None = DEFAULT_BUDGET, seed: int = 0) -> StampResult:
    """S_P; beyond the element budget a validated piece manifest is returned instead."""
    A, pose, Pn, pairs, deferred = stamp_assembly(P, provider, seed, budget=budget)
    top = Pn.lattice.labels[Pn.lattice.top]
    if deferred or (budget is not None and A.total_elements() > budget):
        D = A.diagram()
        out = A.nodes["TQP"].port("pyr1").element((top, "b"))
        summary = {"facets": len(pairs), "anchors": sum(map(len, pairs.values())),
                   "anchors_deferred": len(deferred)}
        man = StampManifest(dict(D.nodes), [(e.a, e.facet_a, e.b, e.facet_b, e.phi) for e in D.edges],
                            ("TQP", out), summary, deferred,
                            [(*v["host"], k, "pentagon") for k, v in deferred.items()])
        man.validate()
        return StampResult(None, man, pose, Pn, pairs)
    g = A.build(ports={"P": ("TQP", "pyr1")}, faces={})
    g.faces["f_P"] = g.port("P").element((top, "b"))
    return StampResult(g, None, pose, Pn, pairs)


__all__ = ["BudgetExceeded", "StampManifest", "StampResult", "stamp", "stamp_assembly", "rational_anchor_spec"]
