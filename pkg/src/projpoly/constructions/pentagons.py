"""Pentagonal faces of cube-halfspace intersections, and nice poses."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .. import linalg as la
from ..geometry import GeometryError, HalfSpace, VPolytope, intersect_halfspaces, unit_cube
from ..projective import Projectivity, apply_projectivity
from .tents import ConstructionError

CLAUSES = ("contains_cube", "misses_facet", "vertex_on_boundary")

# anchor pentagon edge names, keyed by (coordinate role, value)
PENTAGON_EDGE = {("x", 0): "oo", ("y", 0): "0", ("x", 1): "oo'", ("y", 1): "0'", ("h", None): "h"}


class HypothesisError(ConstructionError):
    def __init__(self, clauses: list[str]):
        self.clauses = list(clauses)
        super().__init__("half-space violates: " + ", ".join(self.clauses))


def _cube_vertices(d: int):
    return [tuple(Fraction(x) for x in c) for c in iproduct((0, 1), repeat=d)]


def hypothesis_violations(H: HalfSpace, d: int) -> list[str]:
    """Clauses of the pentagon hypotheses that H violates, by name.

    contains_cube: H contains the whole unit cube.
    misses_facet: some facet of the cube lies outside H.
    vertex_on_boundary: a cube vertex lies on the boundary of H.
    """
    if len(H.normal) != d:
        raise ConstructionError("half-space dimension does not match d")
    vals = {v: H.value(v) for v in _cube_vertices(d)}
    bad = []
    if all(x <= 0 for x in vals.values()):
        bad.append("contains_cube")
    for i in range(d):
        for c in (0, 1):
            if all(vals[v] > 0 for v in vals if v[i] == c):
                bad.append("misses_facet")
                break
        else:
            continue
        break
    if any(x == 0 for x in vals.values()):
        bad.append("vertex_on_boundary")
    return bad


def check_hypotheses(H: HalfSpace, d: int) -> None:
    bad = hypothesis_violations(H, d)
    if bad:
        raise HypothesisError(bad)


@dataclass
class PentagonPair:
    alpha: Fraction  # coordinate of p along the free edge direction, after flipping
    p: tuple  # the vertex on the boundary hyperplane, original coordinates
    pentagon: int  # face id in Q
    label: str  # f in {0,1,x,y}^d
    edge: str  # cube edge word containing p (in flipped coordinates)
    square: str  # cube square word containing the pentagon
    ix: int
    iy: int
    flipped: tuple  # coordinates reflected by x -> 1 - x
    edge_names: dict  # face id in Q of each pentagon edge -> anchor pentagon name
    Q: VPolytope

    def face_labels(self) -> dict:
        """Face id in Q -> label in polygon_lattice of the anchor pentagon."""
        from .anchors import F_NAMES
        L = self.Q.lattice
        out = {}
        below = L.below(self.pentagon)
        for x in below:
            r = L.rank[x]
            if r == -1:
                out[x] = "bot"
            elif r == 2:
                out[x] = "top"
            elif r == 1:
                out[x] = self.edge_names[x]
        for x in below:
            if L.rank[x] == 0:
                names = {self.edge_names[e] for e in L.up[x] if e in self.edge_names}
                for i in range(5):
                    if {F_NAMES[i - 1], F_NAMES[i]} == names:
                        out[x] = ("v", F_NAMES[i - 1], F_NAMES[i])
        return out


def _flip(H: HalfSpace):
    a = list(H.normal)
    b = H.offset
    flipped = []
    for i, x in enumerate(a):
        if x < 0:
            b -= x
            a[i] = -x
            flipped.append(i)
    return a, b, tuple(flipped)


def _to_orig(x, flipped):
    return tuple(1 - v if i in flipped else v for i, v in enumerate(x))


def pentagon_pairs(H: HalfSpace, d: int, Q: VPolytope | None = None) -> list[PentagonPair]:
    """d (vertex on the boundary of H, pentagonal face) pairs of Q_H = cube cap H."""
    check_hypotheses(H, d)
    if d < 2:
        raise ConstructionError("pentagons need d >= 2")
    a, b, flipped = _flip(H)
    # minimal sets of 1-coordinates whose face misses H: sum over them > b
    missing = [S for S in (frozenset(i for i in range(d) if m >> i & 1) for m in range(1, 1 << d))
               if sum((a[i] for i in S), Fraction(0)) > b]
    CH = [S for S in missing if not any(T < S for T in missing)]
    CH.sort(key=lambda S: (len(S), sorted(S)))
    I = set(range(d)) - set().union(*CH)
    if Q is None:
        Q = intersect_halfspaces(unit_cube(d), [H])
    out = []
    for k in range(d):
        if k in I:
            c = CH[0]
            ones = sorted(c)
            ix, iy = ones[0], ones[1]
            J = {k}
        else:
            c = next(S for S in CH if k in S)
            iy = k
            ix = min(i for i in c if i != k)
            J = set()
        f = []
        for i in range(d):
            if i == ix:
                f.append("x")
            elif i == iy:
                f.append("y")
            elif i not in c and i not in J:
                f.append("0")
            else:
                f.append("1")
        f = "".join(f)
        out.append(_realize(f, ix, iy, a, b, flipped, H, Q))
    ps = {pp.p for pp in out}
    if len(ps) != d:
        raise ConstructionError("selected pentagon pairs are not distinct")
    return out


def _realize(f, ix, iy, a, b, flipped, H, Q) -> PentagonPair:
    d = len(f)
    fixed = {i: Fraction(int(ch)) for i, ch in enumerate(f) if ch in "01"}
    fixed[ix] = Fraction(1)
    rest = sum((a[i] * v for i, v in fixed.items()), Fraction(0))
    if a[iy] == 0:
        raise ConstructionError("boundary hyperplane is parallel to the chosen edge")
    alpha = (b - rest) / a[iy]
    if not 0 < alpha < 1:
        raise ConstructionError(f"edge {f} does not cross the boundary hyperplane")
    pf = [fixed.get(i, alpha) for i in range(d)]
    p = _to_orig(pf, flipped)
    if not H.on_boundary(p):
        raise ConstructionError("computed vertex is off the hyperplane")
    try:
        pv = Q.vertices.index(tuple(p))
    except ValueError:
        raise ConstructionError(f"{p} is not a vertex of Q") from None
    # the square f(*,*) in original coordinates
    sq_fixed = {i: (1 - v if i in flipped else v) for i, v in ((i, Fraction(int(ch))) for i, ch in enumerate(f) if ch in "01")}
    in_sq = [j for j, v in enumerate(Q.vertices) if all(v[i] == c for i, c in sq_fixed.items())]
    face = Q.smallest_face(in_sq)
    L = Q.lattice
    if L.rank[face] != 2 or len(Q.face_vertex_indices(face)) != 5 or pv not in Q.face_vertex_indices(face):
        raise ConstructionError(f"square {f} does not carry a pentagon through p")
    names = {}
    for e in L.below(face):
        if L.rank[e] != 1:
            continue
        vs = Q.face_vertices(e)
        loc = [_to_orig(v, flipped) for v in vs]  # flipping is an involution
        if all(H.on_boundary(v) for v in vs):
            names[e] = PENTAGON_EDGE[("h", None)]
        elif loc[0][ix] == loc[1][ix]:
            names[e] = PENTAGON_EDGE[("x", int(loc[0][ix]))]
        elif loc[0][iy] == loc[1][iy]:
            names[e] = PENTAGON_EDGE[("y", int(loc[0][iy]))]
        else:
            raise ConstructionError("pentagon edge is not axis-parallel or on h")
    if sorted(names.values()) != sorted(PENTAGON_EDGE.values()):
        raise ConstructionError("pentagon edges do not match the anchor pentagon")
    edge = f.replace("x", "1").replace("y", "*")
    square = f.replace("x", "*").replace("y", "*")
    return PentagonPair(alpha, tuple(p), face, f, edge, square, ix, iy, flipped, names, Q)


def random_valid_halfspace(rng: random.Random, d: int, tries: int = 1000) -> HalfSpace:
    """A seeded half-space meeting all three pentagon hypotheses."""
    for _ in range(tries):
        a = [Fraction(rng.randint(-6, 6)) for _ in range(d)]
        if all(x == 0 for x in a):
            continue
        vals = sorted(la.dot(a, v) for v in _cube_vertices(d))
        lo, hi = vals[0], vals[-1]
        b = lo + (hi - lo) * Fraction(rng.randint(1, 99), 100)
        H = HalfSpace(a, b)
        if not hypothesis_violations(H, d):
            return H
    raise ConstructionError("no valid half-space found")


# poses


def _facet_halfspaces(P: VPolytope) -> list[HalfSpace]:
    return [F.halfspace for F in P.facets]


def pose_violations(P: VPolytope) -> dict:
    """Facet index -> violated pentagon clauses, for P inside the unit cube."""
    out = {}
    for i, h in enumerate(_facet_halfspaces(P)):
        bad = hypothesis_violations(h, P.ambient)
        if bad:
            out[i] = bad
    return out


POSE_TRIES = 60


def normalize_pose(P: VPolytope, seed: int = 0) -> tuple[Projectivity, VPolytope]:
    """A rational affine map after which every facet half-space of P meets the
    pentagon hypotheses with respect to the unit cube."""
    d = P.ambient
    if P.dim != d:
        raise GeometryError("normalize_pose needs a full-dimensional polytope")
    if not pose_violations(P):
        return Projectivity.identity(d), P
    rng = random.Random(seed)
    c = P.barycenter()
    for attempt in range(POSE_TRIES):
        if attempt == 0:
            M = la.identity(d)
        else:
            M = [[Fraction(int(i == j)) + Fraction(rng.randint(-4, 4), rng.randint(5, 12)) for j in range(d)]
                 for i in range(d)]
            if la.det(M) == 0:
                continue
        X = [la.matvec(M, list(v)) for v in P.vertices]
        cx = la.matvec(M, c)
        if any(len({x[i] for x in X}) != len(X) for i in range(d)):
            continue  # not generic
        box = _box(X, cx, d, P, M)
        if box is None:
            continue
        lo, hi = box
        A = [[(Fraction(1) / (hi[i] - lo[i]) if i == j else Fraction(0)) for j in range(d)] for i in range(d)]
        A = la.matmul(A, M)
        bvec = [-lo[i] / (hi[i] - lo[i]) for i in range(d)]
        pi = Projectivity.from_parts(A, bvec)
        Q = apply_projectivity(pi, P)
        if not pose_violations(Q):
            return pi, Q
    raise ConstructionError("pose normalization ran out of retries")


def _box(X, cx, d, P, M):
    hs = []
    Minv = la.inverse(M)
    for F in P.facets:
        # image half-space: n.(Minv y) <= o
        n = la.matvec(la.transpose(Minv), list(F.halfspace.normal))
        hs.append((n, F.halfspace.offset))
    t = Fraction(1, 2)
    for _ in range(40):
        lo, hi = [], []
        ok = True
        for i in range(d):
            order = sorted(range(len(X)), key=lambda j: X[j][i])
            v, w = X[order[0]], X[order[-1]]
            vb = la.add(v, la.scale(t, la.sub(cx, v)))
            wb = la.add(w, la.scale(t, la.sub(cx, w)))
            others = [X[j][i] for j in order[1:-1]]
            if others and not (vb[i] <= min(others) and max(others) <= wb[i]):
                ok = False
                break
            lo.append(vb[i])
            hi.append(wb[i])
        if ok:
            corners = [[hi[i] if m >> i & 1 else lo[i] for i in range(d)] for m in range(1 << d)]
            if not any(la.dot(n, x) == o for n, o in hs for x in corners):
                return lo, hi
        t /= 2
    return None
