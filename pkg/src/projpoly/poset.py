"""Bounded posets and face lattices.

Elements are interned integers ``0..n-1``. Every element carries a hashable
label; labels are unique and are how callers refer to faces across
operations. ``rank(bottom) == -1`` so a d-polytope has ``rank(top) == d``.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

Label = Hashable


class LatticeError(ValueError):
    pass


class FaceLattice:
    """An immutable bounded poset given by its cover relation."""

    __slots__ = ("labels", "up", "down", "bottom", "top", "rank", "marks",
                 "_index", "_downsets", "_upsets")

    def __init__(self, labels: Sequence[Label], covers: Iterable[tuple[int, int]],
                 marks: dict | None = None):
        n = len(labels)
        self.labels = list(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != n:
            raise LatticeError("labels are not unique")
        up: list[list[int]] = [[] for _ in range(n)]
        down: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for a, b in covers:
            if a == b or (a, b) in seen:
                continue
            seen.add((a, b))
            up[a].append(b)
            down[b].append(a)
        for lst in up:
            lst.sort()
        for lst in down:
            lst.sort()
        self.up = [tuple(x) for x in up]
        self.down = [tuple(x) for x in down]
        mins = [i for i in range(n) if not self.down[i]]
        maxs = [i for i in range(n) if not self.up[i]]
        if len(mins) != 1 or len(maxs) != 1:
            raise LatticeError(f"not bounded: {len(mins)} minimal, {len(maxs)} maximal elements")
        self.bottom = mins[0]
        self.top = maxs[0]
        self.rank = self._longest_chain_ranks()
        self.marks = dict(marks or {})
        self._downsets = None
        self._upsets = None

    def _longest_chain_ranks(self) -> list[int]:
        n = len(self.labels)
        indeg = [len(d) for d in self.down]
        rank = [-1] * n
        queue = deque([self.bottom])
        done = 0
        while queue:
            x = queue.popleft()
            done += 1
            for y in self.up[x]:
                if rank[x] + 1 > rank[y]:
                    rank[y] = rank[x] + 1
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        if done != n:
            raise LatticeError("cover relation has a cycle")
        return rank

    # basic access

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FaceLattice(n={len(self)}, rank={self.dim}, f={self.f_vector()})"

    @property
    def dim(self) -> int:
        return self.rank[self.top]

    @property
    def covers(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(len(self)) for b in self.up[a]]

    def id_of(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LatticeError(f"unknown label {label!r}") from None

    def has_label(self, label: Label) -> bool:
        return label in self._index

    def mark(self, name: str) -> int:
        return self.marks[name]

    def elements_of_rank(self, r: int) -> list[int]:
        return [i for i, k in enumerate(self.rank) if k == r]

    def atoms(self) -> list[int]:
        return list(self.up[self.bottom])

    def coatoms(self) -> list[int]:
        return list(self.down[self.top])

    def f_vector(self) -> tuple[int, ...]:
        d = self.dim
        counts = [0] * (d + 2)
        for r in self.rank:
            counts[r + 1] += 1
        return tuple(counts[1:-1])

    # order

    def downsets(self) -> list[int]:
        """Down-sets as int bitsets, topologically computed once."""
        if self._downsets is None:
            ds = [0] * len(self)
            for x in self.topological():
                m = 1 << x
                for y in self.down[x]:
                    m |= ds[y]
                ds[x] = m
            self._downsets = ds
        return self._downsets

    def upsets(self) -> list[int]:
        if self._upsets is None:
            us = [0] * len(self)
            for x in reversed(self.topological()):
                m = 1 << x
                for y in self.up[x]:
                    m |= us[y]
                us[x] = m
            self._upsets = us
        return self._upsets

    def topological(self) -> list[int]:
        return sorted(range(len(self)), key=lambda i: (self.rank[i], i))

    def leq(self, a: int, b: int) -> bool:
        if a == b:
            return True
        if self.rank[a] >= self.rank[b]:
            return False
        return bool((self.downsets()[b] >> a) & 1)

    def below(self, f: int) -> list[int]:
        """All g <= f, by search from f."""
        seen = {f}
        stack = [f]
        while stack:
            x = stack.pop()
            for y in self.down[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def above(self, f: int) -> list[int]:
        seen = {f}
        stack = [f]
        while stack:
            x = stack.pop()
            for y in self.up[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def with_marks(self, **marks) -> "FaceLattice":
        out = self.copy()
        out.marks.update(marks)
        return out

    def copy(self) -> "FaceLattice":
        return FaceLattice(self.labels, self.covers, self.marks)

    def relabel(self, fn) -> "FaceLattice":
        return FaceLattice([fn(lab) for lab in self.labels], self.covers, self.marks)

    def to_dict(self) -> dict:
        return {
            "elements": [{"id": i, "rank": self.rank[i], "label": _label_to_json(self.labels[i])}
                         for i in range(len(self))],
            "covers": [list(c) for c in self.covers],
            "bottom": self.bottom,
            "top": self.top,
            "marks": dict(self.marks),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FaceLattice":
        elems = sorted(data["elements"], key=lambda e: e["id"])
        ids = [e["id"] for e in elems]
        if ids != list(range(len(ids))):
            pos = {e: i for i, e in enumerate(ids)}
        else:
            pos = None
        labels = [_label_from_json(e.get("label", e["id"])) for e in elems]
        covers = [(a, b) for a, b in data["covers"]]
        if pos is not None:
            covers = [(pos[a], pos[b]) for a, b in covers]
        lat = cls(labels, covers, data.get("marks"))
        if pos is not None:
            lat.marks = {k: pos[v] for k, v in lat.marks.items()}
        for e in elems:
            if "rank" in e and e["rank"] != lat.rank[pos[e["id"]] if pos else e["id"]]:
                raise LatticeError(f"stored rank of element {e['id']} disagrees with covers")
        return lat


def _label_to_json(lab):
    if isinstance(lab, tuple):
        return {"t": [_label_to_json(x) for x in lab]}
    if isinstance(lab, frozenset):
        return {"s": sorted((_label_to_json(x) for x in lab), key=repr)}
    return lab


def _label_from_json(obj):
    if isinstance(obj, dict):
        if "t" in obj:
            return tuple(_label_from_json(x) for x in obj["t"])
        if "s" in obj:
            return frozenset(_label_from_json(x) for x in obj["s"])
    if isinstance(obj, list):
        return tuple(_label_from_json(x) for x in obj)
    return obj


# constructors


def chain(n: int) -> FaceLattice:
    """Chain with n elements 0 < 1 < ... < n-1."""
    return FaceLattice(list(range(n)), [(i, i + 1) for i in range(n - 1)])


def segment_lattice(a: Label = "0", b: Label = "1") -> FaceLattice:
    return FaceLattice(["bot", a, b, "top"], [(0, 1), (0, 2), (1, 3), (2, 3)])


def point_lattice() -> FaceLattice:
    return FaceLattice(["bot", "v", "top"], [(0, 1), (1, 2)])


def polygon_lattice(names: Sequence[Label] | int) -> FaceLattice:
    """Face lattice of a polygon whose edges are named in cyclic order.

    Vertex i sits between edge i-1 and edge i and is labelled by the pair
    of edge names.
    """
    if isinstance(names, int):
        names = [f"e{i}" for i in range(names)]
    k = len(names)
    if k < 3:
        raise LatticeError("a polygon needs at least 3 edges")
    labels: list = ["bot"]
    labels += [("v", names[i - 1], names[i]) for i in range(k)]
    labels += list(names)
    labels.append("top")
    covers = []
    for i in range(k):
        covers.append((0, 1 + i))
        covers.append((1 + i, 1 + k + i))
        covers.append((1 + i, 1 + k + (i - 1) % k))
        covers.append((1 + k + i, 2 * k + 1))
    return FaceLattice(labels, covers)


def from_vertex_sets(vertex_sets: Iterable[Iterable[int]], nverts: int | None = None) -> FaceLattice:
    """Lattice ordered by inclusion from the list of faces given as vertex index sets.

    The empty set and the full set are added when missing. Labels are the
    sorted vertex tuples.
    """
    faces = {tuple(sorted(set(s))) for s in vertex_sets}
    allv = set()
    for s in faces:
        allv.update(s)
    if nverts is not None:
        allv.update(range(nverts))
    faces.add(())
    faces.add(tuple(sorted(allv)))
    return _inclusion_lattice(sorted(faces, key=lambda s: (len(s), s)))


def _inclusion_lattice(faces: list[tuple]) -> FaceLattice:
    masks = []
    for s in faces:
        m = 0
        for v in s:
            m |= 1 << v
        masks.append(m)
    order = sorted(range(len(faces)), key=lambda i: bin(masks[i]).count("1"))
    covers = []
    for idx, i in enumerate(order):
        mi = masks[i]
        supers = [j for j in order[idx + 1:] if masks[j] & mi == mi and masks[j] != mi]
        minimal = []
        for j in supers:
            mj = masks[j]
            if not any(masks[k] != mj and masks[k] & mj == masks[k] for k in supers if k != j):
                minimal.append(j)
        covers.extend((i, j) for j in minimal)
    return FaceLattice(faces, covers)


# operations


def dual(L: FaceLattice) -> FaceLattice:
    return FaceLattice(L.labels, [(b, a) for a, b in L.covers], L.marks)


def product(L1: FaceLattice, L2: FaceLattice) -> FaceLattice:
    n2 = len(L2)
    labels = [(a, b) for a in L1.labels for b in L2.labels]
    covers = []
    for i in range(len(L1)):
        for j in range(n2):
            x = i * n2 + j
            for k in L1.up[i]:
                covers.append((x, k * n2 + j))
            for k in L2.up[j]:
                covers.append((x, i * n2 + k))
    return FaceLattice(labels, covers)


def lower_interval(L: FaceLattice, f: int) -> FaceLattice:
    keep = L.below(f)
    return induced(L, keep)


def upper_interval(L: FaceLattice, f: int) -> FaceLattice:
    keep = L.above(f)
    return induced(L, keep)


def induced(L: FaceLattice, keep: Sequence[int]) -> FaceLattice:
    """Induced subposet on a set closed under intervals (covers stay covers)."""
    pos = {x: i for i, x in enumerate(keep)}
    covers = [(pos[a], pos[b]) for a in keep for b in L.up[a] if b in pos]
    marks = {k: pos[v] for k, v in L.marks.items() if v in pos}
    return FaceLattice([L.labels[x] for x in keep], covers, marks)


def subposet(L: FaceLattice, keep: Iterable[int], extra_labels: dict | None = None) -> FaceLattice:
    """Induced subposet on an arbitrary subset; covers are recomputed.

    The subset must contain a unique minimum and maximum.
    """
    keep = sorted(set(keep), key=lambda i: (L.rank[i], i))
    kset = set(keep)
    pos = {x: i for i, x in enumerate(keep)}
    covers = []
    for s in keep:
        cands = set()
        seen = {s}
        stack = list(L.up[s])
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            if x in kset:
                cands.add(x)
                continue
            stack.extend(L.up[x])
        cl = sorted(cands, key=lambda i: L.rank[i])
        for t in cl:
            if not any(u != t and L.leq(u, t) for u in cl if L.rank[u] < L.rank[t]):
                covers.append((pos[s], pos[t]))
    marks = {k: pos[v] for k, v in L.marks.items() if v in pos}
    return FaceLattice([L.labels[x] for x in keep], covers, marks)


def order_from_relation(labels: Sequence[Label], leq) -> FaceLattice:
    """Build a poset from a comparison predicate on labels (small inputs only)."""
    n = len(labels)
    less = [[j for j in range(n) if j != i and leq(labels[i], labels[j])] for i in range(n)]
    covers = []
    for i in range(n):
        li = set(less[i])
        for j in less[i]:
            if not any(k in li for k in less[j] if k != j):
                covers.append((i, j))
    return FaceLattice(labels, covers)


def _comparable_pairs(L: FaceLattice) -> list[tuple[int, int]]:
    us = L.upsets()
    out = []
    for g in range(len(L)):
        m = us[g]
        f = 0
        while m:
            if m & 1:
                out.append((g, f))
            m >>= 1
            f += 1
    return out


BOTTOM_LABEL = "_bot"
TOP_LABEL = "_top"


def intervals_poset(L: FaceLattice, complete: bool = True) -> FaceLattice:
    """Intervals [g,f] ordered by inclusion, optionally with an adjoined bottom."""
    pairs = _comparable_pairs(L)
    pos = {p: i for i, p in enumerate(pairs)}
    covers = []
    for (g, f), i in pos.items():
        for g2 in L.down[g]:
            covers.append((i, pos[(g2, f)]))
        for f2 in L.up[f]:
            covers.append((i, pos[(g, f2)]))
    labels = [("I", L.labels[g], L.labels[f]) for g, f in pairs]
    if not complete:
        return _raw_poset(labels, covers)
    return complete_bounds_raw(labels, covers)


def abstract_antiprism(L: FaceLattice, complete: bool = True) -> FaceLattice:
    """Pairs (g, f*) with g <= f inside product(L, dual(L)).

    (g,f*) <= (g',f'*) iff g <= g' and f >= f'. The minimum (bot, top*)
    is present already; with ``complete`` a top is adjoined.
    """
    pairs = _comparable_pairs(L)
    pos = {p: i for i, p in enumerate(pairs)}
    covers = []
    for (g, f), i in pos.items():
        for g2 in L.up[g]:
            if (g2, f) in pos:
                covers.append((i, pos[(g2, f)]))
        for f2 in L.down[f]:
            if (g, f2) in pos:
                covers.append((i, pos[(g, f2)]))
    labels = [(L.labels[g], L.labels[f]) for g, f in pairs]
    if not complete:
        return _raw_poset(labels, covers)
    return complete_bounds_raw(labels, covers)


@dataclass
class RawPoset:
    """A finite poset that may lack bounds; produced before bound completion."""

    labels: list
    covers: list
    minimal: list = field(default_factory=list)
    maximal: list = field(default_factory=list)

    def __len__(self):
        return len(self.labels)


def _raw_poset(labels, covers) -> RawPoset:
    n = len(labels)
    has_down = [False] * n
    has_up = [False] * n
    for a, b in covers:
        has_up[a] = True
        has_down[b] = True
    return RawPoset(list(labels), list(covers),
                    [i for i in range(n) if not has_down[i]],
                    [i for i in range(n) if not has_up[i]])


def complete_bounds_raw(labels, covers) -> FaceLattice:
    raw = _raw_poset(labels, covers)
    return complete_bounds(raw)


def complete_bounds(P: RawPoset) -> FaceLattice:
    """Adjoin a bottom and/or top when the poset lacks a unique one."""
    labels = list(P.labels)
    covers = list(P.covers)
    if len(P.minimal) != 1:
        b = len(labels)
        labels.append(BOTTOM_LABEL)
        covers.extend((b, m) for m in P.minimal)
    if len(P.maximal) != 1:
        t = len(labels)
        labels.append(TOP_LABEL)
        covers.extend((m, t) for m in P.maximal)
    return FaceLattice(labels, covers)


def pyramid(L: FaceLattice) -> FaceLattice:
    """L x {bot, top}; the base is the element (top_L, 'b')."""
    two = FaceLattice(["b", "a"], [(0, 1)])
    P = product(L, two)
    base = P.id_of((L.labels[L.top], "b"))
    apex = P.id_of((L.labels[L.bottom], "a"))
    marks = {"base": base, "apex": apex}
    for k, v in L.marks.items():
        marks[k] = P.id_of((L.labels[v], "b"))
    P.marks = marks
    return P


def iterated_pyramid(L: FaceLattice, k: int) -> FaceLattice:
    for _ in range(k):
        L = pyramid(L)
    return L


# validity


@dataclass
class LatticeReport:
    bounded: bool
    graded: bool
    lattice: bool | None
    euler: bool
    rank: int
    f_vector: tuple
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.bounded and self.graded and self.lattice is True and self.euler

    def __bool__(self):
        return self.ok


FULL_CHECK_LIMIT = 2500


def check_lattice(L: FaceLattice, full_limit: int = FULL_CHECK_LIMIT) -> LatticeReport:
    problems = []
    graded = True
    for a, b in L.covers:
        if L.rank[b] != L.rank[a] + 1:
            graded = False
            problems.append(f"cover {L.labels[a]!r} < {L.labels[b]!r} skips a rank")
            break
    fv = L.f_vector()
    d = L.dim
    euler_sum = -1 + sum((-1) ** i * c for i, c in enumerate(fv)) + (-1) ** d
    euler = euler_sum == 0
    if not euler:
        problems.append(f"Euler sum is {euler_sum}")
    is_lat = _galois_lattice_check(L)
    if is_lat is None and len(L) <= full_limit:
        is_lat = _pairwise_lattice_check(L)
    if is_lat is False:
        problems.append("some pair has no meet")
    if is_lat is None:
        problems.append("lattice property undetermined at this size")
    return LatticeReport(True, graded, is_lat, euler, d, fv, problems)


def _pairwise_lattice_check(L: FaceLattice) -> bool:
    ds = L.downsets()
    n = len(L)
    by_rank = sorted(range(n), key=lambda i: -L.rank[i])
    for x in range(n):
        for y in range(x + 1, n):
            common = ds[x] & ds[y]
            if common == ds[x] or common == ds[y]:
                continue
            best = None
            for z in by_rank:
                if (common >> z) & 1:
                    best = z
                    break
            if ds[best] != common:
                return False
    return True


def _galois_lattice_check(L: FaceLattice) -> bool | None:
    """Exact test for atomic and coatomic posets; None when those fail.

    Encodes each element by its vertex set A(x) and its coatom set C(x).
    The poset is then a lattice iff the image of A is the family of all
    intersections of coatom vertex sets and its covers match the poset's.
    """
    n = len(L)
    atoms = L.atoms()
    coatoms = L.coatoms()
    if n <= 2:
        return True
    apos = {a: i for i, a in enumerate(atoms)}
    cpos = {c: i for i, c in enumerate(coatoms)}
    A = [0] * n
    for x in L.topological():
        if x in apos:
            A[x] = 1 << apos[x]
        else:
            m = 0
            for y in L.down[x]:
                m |= A[y]
            A[x] = m
    C = [0] * n
    for x in reversed(L.topological()):
        if x in cpos:
            C[x] = 1 << cpos[x]
        else:
            m = 0
            for y in L.up[x]:
                m |= C[y]
            C[x] = m
    index = {}
    for x in range(n):
        if A[x] in index:
            return None
        index[A[x]] = x
    full_a = (1 << len(atoms)) - 1
    Ac = [A[c] for c in coatoms]
    for x in range(n):
        if x == L.top:
            continue
        want_c = 0
        inter = full_a
        for i, ac in enumerate(Ac):
            if ac & A[x] == A[x]:
                want_c |= 1 << i
                inter &= ac
        if want_c != C[x] or inter != A[x]:
            return None
    for x in range(n):
        if x == L.bottom:
            continue
        ax = A[x]
        meets = set()
        for i, ac in enumerate(Ac):
            if (C[x] >> i) & 1:
                continue
            m = ax & ac
            y = index.get(m)
            if y is None:
                return False
            meets.add(m)
        maximal = {m for m in meets if not any(o != m and o & m == m for o in meets)}
        have = {A[y] for y in L.down[x]}
        if maximal != have:
            return False
    return True


# isomorphism


@dataclass
class PosetMap:
    source: FaceLattice
    target: FaceLattice
    assignment: list

    def __call__(self, x: int) -> int:
        return self.assignment[x]

    def inverse(self) -> "PosetMap":
        inv = [0] * len(self.assignment)
        for a, b in enumerate(self.assignment):
            inv[b] = a
        return PosetMap(self.target, self.source, inv)

    def is_isomorphism(self) -> bool:
        return is_isomorphism(self.source, self.target, self.assignment)


def is_isomorphism(L1: FaceLattice, L2: FaceLattice, m) -> bool:
    if isinstance(m, PosetMap):
        m = m.assignment
    if len(L1) != len(L2) or len(set(m)) != len(L1):
        return False
    c1 = {(m[a], m[b]) for a, b in L1.covers}
    return c1 == set(L2.covers)


ISO_LIMIT = 200000


def find_isomorphism(L1: FaceLattice, L2: FaceLattice, limit: int = ISO_LIMIT,
                     respect=None) -> PosetMap | None:
    """Order isomorphism L1 -> L2, or None.

    Individualize-and-refine search: colors start from (rank, degrees),
    are refined jointly on both posets, and one element per step is
    individualized until the coloring is discrete. ``respect`` lists
    (x1, x2) pairs that must correspond.
    """
    n = len(L1)
    if n > limit or len(L2) > limit:
        raise LatticeError(f"isomorphism search limited to {limit} elements")
    if n != len(L2) or L1.f_vector() != L2.f_vector() or len(L1.covers) != len(L2.covers):
        return None
    if n == 0:
        return PosetMap(L1, L2, [])
    a = [(L1.rank[i], len(L1.up[i]), len(L1.down[i])) for i in range(n)]
    b = [(L2.rank[i], len(L2.up[i]), len(L2.down[i])) for i in range(n)]
    for k, (x, y) in enumerate(respect or []):
        a[x] = ("fixed", k)
        b[y] = ("fixed", k)
    res = _refine_pair(L1, L2, a, b)
    if res is None:
        return None
    m = _individualize(L1, L2, res[0], res[1], 0)
    return None if m is None else PosetMap(L1, L2, m)


def _refine_pair(L1, L2, a, b):
    """Joint color refinement; None when the color multisets diverge."""
    n = len(a)
    palette: dict = {}
    a = [palette.setdefault(c, len(palette)) for c in a]
    b = [palette.setdefault(c, len(palette)) for c in b]
    count = len(palette)
    while True:
        if Counter(a) != Counter(b):
            return None
        palette = {}
        na = [palette.setdefault((a[i], tuple(sorted(a[j] for j in L1.up[i])),
                                  tuple(sorted(a[j] for j in L1.down[i]))), len(palette)) for i in range(n)]
        nb = [palette.setdefault((b[i], tuple(sorted(b[j] for j in L2.up[i])),
                                  tuple(sorted(b[j] for j in L2.down[i]))), len(palette)) for i in range(n)]
        a, b = na, nb
        if len(palette) == count:
            if Counter(a) != Counter(b):
                return None
            return a, b
        count = len(palette)


def _individualize(L1, L2, a, b, depth):
    n = len(a)
    classes_a: dict = {}
    for i, c in enumerate(a):
        classes_a.setdefault(c, []).append(i)
    if len(classes_a) == n:
        pos_b = {c: j for j, c in enumerate(b)}
        m = [pos_b[c] for c in a]
        return m if is_isomorphism(L1, L2, m) else None
    target = min((cl for cl in classes_a.values() if len(cl) > 1), key=lambda cl: (len(cl), cl[0]))
    x = target[0]
    col = a[x]
    fresh = ("ind", depth)
    for y in [j for j, c in enumerate(b) if c == col]:
        a2 = list(a)
        b2 = list(b)
        a2[x] = fresh
        b2[y] = fresh
        res = _refine_pair(L1, L2, a2, b2)
        if res is None:
            continue
        m = _individualize(L1, L2, res[0], res[1], depth + 1)
        if m is not None:
            return m
    return None


def isomorphic(L1: FaceLattice, L2: FaceLattice) -> bool:
    return find_isomorphism(L1, L2) is not None
