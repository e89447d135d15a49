"""Gluing and whittling of bounded posets, and gluing diagrams."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .poset import FaceLattice, LatticeError, PosetMap, dual, find_isomorphism, lower_interval, upper_interval


class GlueError(ValueError):
    pass


def _as_glue_map(L0: FaceLattice, f0: int, L1: FaceLattice, f1: int, phi) -> dict:
    """Normalize phi to a dict on full-lattice ids, from [bot, f0] onto [bot, f1]."""
    if isinstance(phi, PosetMap):
        # a map between the lower intervals themselves: translate through labels
        src, tgt = phi.source, phi.target
        out = {}
        for i, j in enumerate(phi.assignment):
            out[L0.id_of(src.labels[i])] = L1.id_of(tgt.labels[j])
        return out
    if isinstance(phi, Mapping):
        return {int(k): int(v) for k, v in phi.items()}
    raise GlueError("phi must be a PosetMap or a dict of ids")


def check_glue_map(L0: FaceLattice, f0: int, L1: FaceLattice, f1: int, phi: dict) -> None:
    for L, f, name in ((L0, f0, "f0"), (L1, f1, "f1")):
        if f not in L.coatoms():
            raise GlueError(f"{name} is not a facet (coatom)")
    dom = set(L0.below(f0))
    cod = set(L1.below(f1))
    if set(phi) != dom:
        raise GlueError("phi is not defined exactly on [bot, f0]")
    if set(phi.values()) != cod or len(set(phi.values())) != len(dom):
        raise GlueError("phi is not a bijection onto [bot, f1]")
    if phi[f0] != f1:
        raise GlueError("phi does not send f0 to f1")
    for a in dom:
        ups0 = {b for b in L0.up[a] if b in dom}
        ups1 = {b for b in L1.up[phi[a]] if b in cod}
        if {phi[b] for b in ups0} != ups1:
            raise GlueError("phi does not preserve the cover relation")


def facet_isomorphism(L0: FaceLattice, f0: int, L1: FaceLattice, f1: int, respect=None) -> dict:
    """Some isomorphism [bot, f0] -> [bot, f1] as a dict of full-lattice ids."""
    I0, I1 = lower_interval(L0, f0), lower_interval(L1, f1)
    m = find_isomorphism(I0, I1, respect=respect)
    if m is None:
        raise GlueError("facets are not isomorphic")
    return _as_glue_map(L0, f0, L1, f1, m)


def label_map(L0: FaceLattice, f0: int, L1: FaceLattice, f1: int, fn) -> dict:
    """phi from a label translation fn: label in L0 -> label in L1."""
    return {g: L1.id_of(fn(L0.labels[g])) for g in L0.below(f0)}


# diagrams


@dataclass
class GlueEdge:
    a: str
    facet_a: int
    b: str
    facet_b: int
    phi: object = None  # dict of ids, PosetMap, or None to search for one

    def key(self):
        return (self.a, self.facet_a, self.b, self.facet_b)


@dataclass
class GluingDiagram:
    nodes: list  # (name, FaceLattice)
    edges: list = field(default_factory=list)  # GlueEdge or 5-tuples
    output_face: tuple | None = None  # (node, face id)
    outputs: dict = field(default_factory=dict)  # extra named faces: name -> (node, face id)

    def __post_init__(self):
        self.edges = [e if isinstance(e, GlueEdge) else GlueEdge(*e) for e in self.edges]
        names = [n for n, _ in self.nodes]
        if len(set(names)) != len(names):
            raise GlueError("node names must be unique")

    def node(self, name: str) -> FaceLattice:
        for n, L in self.nodes:
            if n == name:
                return L
        raise GlueError(f"unknown node {name!r}")

    def add(self, name: str, L: FaceLattice) -> str:
        if any(n == name for n, _ in self.nodes):
            raise GlueError(f"duplicate node {name!r}")
        self.nodes.append((name, L))
        return name

    def connect(self, a: str, fa: int, b: str, fb: int, phi=None) -> None:
        self.edges.append(GlueEdge(a, fa, b, fb, phi))

    def total_elements(self) -> int:
        return sum(len(L) for _, L in self.nodes)


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.p[rb] = ra


def _resolved_edges(D: GluingDiagram) -> list[tuple[str, int, str, int, dict]]:
    out = []
    used = set()
    for e in D.edges:
        La, Lb = D.node(e.a), D.node(e.b)
        phi = facet_isomorphism(La, e.facet_a, Lb, e.facet_b) if e.phi is None else \
            _as_glue_map(La, e.facet_a, Lb, e.facet_b, e.phi)
        check_glue_map(La, e.facet_a, Lb, e.facet_b, phi)
        for end in ((e.a, e.facet_a), (e.b, e.facet_b)):
            if end in used:
                raise GlueError(f"facet {end} is glued twice")
            used.add(end)
        if e.a == e.b:
            raise GlueError("an edge must join two different nodes")
        out.append((e.a, e.facet_a, e.b, e.facet_b, phi))
    out.sort(key=lambda t: t[:4])
    return out


def _connected(D: GluingDiagram, edges) -> bool:
    names = [n for n, _ in D.nodes]
    adj = {n: set() for n in names}
    for a, _, b, _, _ in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {names[0]}
    stack = [names[0]]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == len(names)


def _transitive_reduction(n: int, edges: set) -> list[tuple[int, int]]:
    up = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in edges:
        up[a].append(b)
        indeg[b] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for y in up[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                order.append(y)
    if len(order) != n:
        raise GlueError("glued order has a cycle (phi breaks antisymmetry)")
    rank = [0] * n
    for x in order:
        for y in up[x]:
            if rank[y] < rank[x] + 1:
                rank[y] = rank[x] + 1
    covers = []
    for a in range(n):
        ups = up[a]
        for b in ups:
            if rank[b] == rank[a] + 1 or not _reaches_avoiding(up, rank, a, b):
                covers.append((a, b))
    return covers


def _reaches_avoiding(up, rank, a, b) -> bool:
    """Is b reachable from a through some other upper neighbour of a?"""
    stack = [c for c in up[a] if c != b and rank[c] < rank[b]]
    seen = set(stack)
    while stack:
        x = stack.pop()
        for y in up[x]:
            if y == b:
                return True
            if y not in seen and rank[y] < rank[b]:
                seen.add(y)
                stack.append(y)
    return False


def run_diagram(D: GluingDiagram, budget: int | None = None, with_map: bool = False):
    """Glue every edge of the diagram at once.

    Glued facets are removed, faces matched by each phi and all tops are
    identified, and the order is the one generated by the pieces. Each
    class is represented by its first element in node order, so labels
    are (node name, original label) and the result does not depend on the
    order in which edges are listed.
    """
    if not D.nodes:
        raise GlueError("empty diagram")
    edges = _resolved_edges(D)
    if len(D.nodes) > 1 and not _connected(D, edges):
        raise GlueError("diagram has a dangling node")
    if budget is not None and D.total_elements() > budget:
        raise BudgetExceeded(D.total_elements(), budget)
    offs = {}
    total = 0
    for name, L in D.nodes:
        offs[name] = total
        total += len(L)
    removed = set()
    for a, fa, b, fb, _ in edges:
        removed.add(offs[a] + fa)
        removed.add(offs[b] + fb)
    uf = _UF(total)
    tops = [offs[n] + L.top for n, L in D.nodes]
    for t in tops[1:]:
        uf.union(tops[0], t)
    for a, fa, b, fb, phi in edges:
        for g, h in phi.items():
            if g != fa:
                uf.union(offs[a] + g, offs[b] + h)
    reps = sorted({uf.find(x) for x in range(total) if x not in removed})
    cls = {r: i for i, r in enumerate(reps)}
    node_of = []
    for name, L in D.nodes:
        node_of.extend((name, L, j) for j in range(len(L)))
    labels = []
    for r in reps:
        name, L, j = node_of[r]
        labels.append((name, L.labels[j]))
    top_c = cls[uf.find(tops[0])]
    rel = set()
    for name, L in D.nodes:
        o = offs[name]
        for x in range(len(L)):
            if o + x in removed:
                continue
            cx = cls[uf.find(o + x)]
            alive = False
            for y in L.up[x]:
                if o + y in removed:
                    continue
                alive = True
                cy = cls[uf.find(o + y)]
                if cy == cx:
                    raise GlueError("phi identifies comparable elements")
                rel.add((cx, cy))
            if not alive and cx != top_c:
                rel.add((cx, top_c))
    covers = _transitive_reduction(len(reps), rel)
    marks = {}
    for name, L in D.nodes:
        for k, v in L.marks.items():
            g = offs[name] + v
            if g not in removed:
                marks[f"{name}.{k}"] = cls[uf.find(g)]
    for key, (name, f) in list(D.outputs.items()) + ([("output", D.output_face)] if D.output_face else []):
        g = offs[name] + f
        if g in removed:
            raise GlueError(f"distinguished face {key!r} was glued away")
        marks[key] = cls[uf.find(g)]
    try:
        L = FaceLattice(labels, covers, marks)
    except LatticeError as exc:
        raise GlueError(f"glued poset is malformed: {exc}") from exc
    if with_map:
        where = {}
        for name, Ln in D.nodes:
            o = offs[name]
            for j in range(len(Ln)):
                where[(name, j)] = -1 if o + j in removed else cls[uf.find(o + j)]
        return L, where
    return L


class BudgetExceeded(RuntimeError):
    def __init__(self, size, budget):
        super().__init__(f"{size} lattice elements exceed the budget of {budget}")
        self.size = size
        self.budget = budget


def glue(L0: FaceLattice, f0: int, L1: FaceLattice, f1: int, phi=None, names=("0", "1")) -> FaceLattice:
    """P0 #_phi P1 along facets f0, f1; labels become (name, label)."""
    D = GluingDiagram([(names[0], L0), (names[1], L1)], [GlueEdge(names[0], f0, names[1], f1, phi)])
    return run_diagram(D)


def whittle(L0: FaceLattice, v0: int, L1: FaceLattice, v1: int, phi=None, names=("0", "1")) -> FaceLattice:
    """(P0* #_phi P1*)*: phi maps [v0, top] onto [v1, top]."""
    if phi is None:
        I0, I1 = upper_interval(L0, v0), upper_interval(L1, v1)
        m = find_isomorphism(I0, I1)
        if m is None:
            raise GlueError("vertex figures are not isomorphic")
        phi = _as_glue_map(L0, v0, L1, v1, m)
    elif isinstance(phi, PosetMap):
        phi = _as_glue_map(L0, v0, L1, v1, phi)
    return dual(glue(dual(L0), v0, dual(L1), v1, phi, names))


def fold_diagram(D: GluingDiagram, order: Sequence[int] | None = None) -> FaceLattice:
    """Glue edge by edge in the given order (an independent route to run_diagram).

    Labels nest as glue proceeds, so results are compared up to isomorphism.
    """
    edges = _resolved_edges(D)
    if order is not None:
        edges = [edges[i] for i in order]
    group = {n: n for n, _ in D.nodes}
    lat = {n: L for n, L in D.nodes}
    where = {(n, i): i for n, L in D.nodes for i in range(len(L))}
    for a, fa, b, fb, phi in edges:
        ga, gb = group[a], group[b]
        if ga == gb:
            raise GlueError("diagram has a cycle of gluings; fold needs a tree")
        phi2 = {where[(a, g)]: where[(b, h)] for g, h in phi.items()}
        pair = GluingDiagram([("0", lat[ga]), ("1", lat[gb])],
                             [GlueEdge("0", where[(a, fa)], "1", where[(b, fb)], phi2)])
        G, m = run_diagram(pair, with_map=True)
        new = f"{ga}+{gb}"
        for key, idx in list(where.items()):
            g = group[key[0]]
            if idx >= 0 and g in (ga, gb):
                where[key] = m[("0" if g == ga else "1", idx)]
        for n in group:
            if group[n] in (ga, gb):
                group[n] = new
        lat[new] = G
    roots = set(group.values())
    if len(roots) != 1:
        raise GlueError("diagram has a dangling node")
    return lat[roots.pop()]
