"""Exact ordering of values in Q(alpha) and the relation program for R_alpha.

Values are polynomials in alpha (coefficient lists, low degree first)
reduced modulo the minimal polynomial. Signs are decided on an isolating
interval that is bisected until interval Horner evaluation excludes zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .tents import ConstructionError

SIGN_BUDGET = 4000  # bisection steps per sign decision


# polynomial helpers


def _trim(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def pscale(c, p):
    return _trim([c * x for x in p])


def pmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def pdivmod(p, q):
    p, q = _trim(p), _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    r = list(p)
    while len(r) >= len(q) and r:
        c = r[-1] / q[-1]
        k = len(r) - len(q)
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = _trim(r)
    return _trim(quot), r


def pmod(p, q):
    return pdivmod(p, q)[1]


def pgcd(p, q):
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, pmod(p, q)
    return pscale(1 / p[-1], p) if p else []


def pderiv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p) -> list:
    seq = [_trim(p), pderiv(p)]
    while seq[-1]:
        r = pmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append(pscale(-1, r))
    return seq


def sturm_count(p, lo, hi) -> int:
    """Number of distinct real roots in (lo, hi] (lo, hi not roots of p)."""
    seq = sturm_sequence(p)

    def changes(x):
        s = [_sgn(peval(q, x)) for q in seq]
        s = [v for v in s if v]
        return sum(1 for a, b in zip(s, s[1:]) if a != b)

    return changes(lo) - changes(hi)


def interval_eval(p, lo, hi) -> tuple[Fraction, Fraction]:
    """Enclosure of p on [lo, hi] by interval Horner evaluation."""
    a = b = Fraction(0)
    for c in reversed(p):
        prods = [a * lo, a * hi, b * lo, b * hi]
        a, b = min(prods) + c, max(prods) + c
    return a, b


@dataclass
class AlgebraicNumberSpec:
    """alpha in (0,1): the unique root of sum c_t x^t with b1-1 < b2 alpha < b1."""

    coefficients: list
    b1: int
    b2: int

    def __post_init__(self):
        c = [int(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        if len(c) < 2:
            raise ConstructionError("the minimal polynomial needs degree at least 1")
        if c[-1] < 0:
            c = [-x for x in c]
        g = 0
        for x in c:
            g = gcd(g, x)
        c = [x // g for x in c]
        self.coefficients = c
        self.b1, self.b2 = int(self.b1), int(self.b2)
        if self.b1 < 1 or self.b2 < 1:
            raise ConstructionError("b1 and b2 must be positive integers")
        if self.b1 > self.b2:
            raise ConstructionError("alpha must lie in (0, 1), so b1 <= b2")
        self._isolate()

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def poly(self) -> list:
        return [Fraction(x) for x in self.coefficients]

    def _isolate(self):
        p = self.poly
        lo, hi = Fraction(self.b1 - 1, self.b2), Fraction(self.b1, self.b2)
        if pgcd(p, pderiv(p)) != [Fraction(1)]:
            raise ConstructionError("polynomial is not square-free")
        plo, phi = peval(p, lo), peval(p, hi)
        if plo == 0 or phi == 0:
            raise ConstructionError("the isolating interval has a root at an endpoint")
        if sturm_count(p, lo, hi) != 1:
            raise ConstructionError("the interval does not isolate exactly one root")
        if _sgn(plo) == _sgn(phi):
            raise ConstructionError("no sign change on the isolating interval")
        self.interval = (lo, hi)

    @classmethod
    def parse(cls, text: str) -> "AlgebraicNumberSpec":
        """Lines ``coefficients: c0 c1 ... cn``, ``b1: k``, ``b2: k``; # comments."""
        fields = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if ":" not in line:
                raise ConstructionError(f"cannot parse line {line!r}")
            k, v = line.split(":", 1)
            fields[k.strip().lower()] = v.split()
        try:
            return cls([int(x) for x in fields["coefficients"]], int(fields["b1"][0]), int(fields["b2"][0]))
        except KeyError as exc:
            raise ConstructionError(f"missing field {exc.args[0]!r}") from None
        except ValueError as exc:
            raise ConstructionError(str(exc)) from None

    def dump(self) -> str:
        return (f"coefficients: {' '.join(map(str, self.coefficients))}\n"
                f"b1: {self.b1}\nb2: {self.b2}\n")


class AlgebraicField:
    """Arithmetic and exact sign decisions in Q(alpha)."""

    def __init__(self, spec: AlgebraicNumberSpec):
        self.spec = spec
        self.p = spec.poly
        self.lo, self.hi = spec.interval
        self.slo = _sgn(peval(self.p, self.lo))
        self.exact = None  # alpha once a bisection midpoint hits it

    def reduce(self, q) -> tuple:
        return tuple(pmod(q, self.p))

    def alpha_power(self, t: int) -> tuple:
        return self.reduce([0] * t + [1])

    def const(self, c) -> tuple:
        return self.reduce([c])

    def _refine(self):
        mid = (self.lo + self.hi) / 2
        s = _sgn(peval(self.p, mid))
        if s == 0:
            self.exact = mid
        elif s == self.slo:
            self.lo = mid
        else:
            self.hi = mid

    def sign(self, q) -> int:
        q = _trim(q)
        if not q:
            return 0
        g = pgcd(self.p, q)
        if len(g) > 1:
            lo, hi = self.spec.interval
            if peval(g, lo) == 0 or peval(g, hi) == 0 or sturm_count(g, lo, hi) > 0:
                raise ConstructionError("value vanishes at alpha: the polynomial is not minimal")
        for _ in range(SIGN_BUDGET):
            if self.exact is not None:
                return _sgn(peval(q, self.exact))
            a, b = interval_eval(q, self.lo, self.hi)
            if a > 0:
                return 1
            if b < 0:
                return -1
            self._refine()
        raise ConstructionError("sign refinement budget exhausted")

    def compare(self, x, y) -> int:
        return self.sign(padd(list(x), pscale(-1, list(y))))

    def approx(self, q) -> Fraction:
        """A rational point estimate, for display only."""
        m = self.exact if self.exact is not None else (self.lo + self.hi) / 2
        return peval(list(q), m)


@dataclass
class RelationProgram:
    """Sorted values x_0 < ... < x_{m-1} and index tuples per relation type."""

    spec: AlgebraicNumberSpec
    values: list  # reduced polynomials
    names: list  # human-readable descriptions
    o: int
    a: int
    u: int
    relations: dict = field(default_factory=dict)  # "2x", "x+y", "x2", "xy" -> list of tuples
    approx: list = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.values)

    def check(self) -> None:
        used = set()
        for k, rs in self.relations.items():
            for r in rs:
                if len(set(r)) != len(r):
                    raise ConstructionError(f"degenerate {k} relation {r}")
                used.update(r)
                if self.o in r and k in ("x+y", "2x"):
                    raise ConstructionError(f"0 appears in an R_{k} relation")
                if (self.o in r or self.u in r) and k in ("xy", "x2"):
                    raise ConstructionError(f"0 or 1 appears in an R_{k} relation")
        missing = [i for i in range(self.m) if i != self.o and i not in used]
        if missing:
            raise ConstructionError(f"values {[self.names[i] for i in missing]} are in no relation")


def relation_program(spec: AlgebraicNumberSpec) -> RelationProgram:
    K = AlgebraicField(spec)
    c = spec.coefficients
    n = spec.degree
    N = max([spec.b1, spec.b2] + [abs(x) for x in c])
    vals: dict[tuple, str] = {}

    def add(q, name):
        q = K.reduce(list(q))
        vals.setdefault(q, name)
        return q

    ints = [add([k], str(k)) for k in range(N + 1)]
    zero, one = ints[0], ints[1]
    pw = [add(K.alpha_power(t), "a" if t == 1 else f"a^{t}") for t in range(1, n + 1)]
    pw = [one] + pw
    alpha = pw[1]
    mono = {}
    for t in range(1, n + 1):
        if c[t]:
            mono[t] = add(pscale(abs(c[t]), list(pw[t])), f"|{c[t]}a^{t}|")
    S = [add([c[0]], str(c[0]))]
    for t in range(1, n):
        S.append(add(padd(list(S[-1]), pscale(c[t], list(pw[t]))), f"S{t}"))
    b2a = add(pscale(spec.b2, list(alpha)), f"{spec.b2}a")

    rel: dict[str, list] = {"2x": [], "x+y": [], "x2": [], "xy": []}

    def r2x(x, y):
        rel["2x"].append((x, y))

    def rsum(x, y, z):
        if x == y:
            r2x(x, z)
        else:
            rel["x+y"].append((x, y, z))

    def rmul(x, y, z):
        """x y = z; integer factors meeting 0 or 1 become repeated additions."""
        if zero in (x, y, z) or one in (x, y, z):
            if x in ints and z != zero:
                k = ints.index(x)
                acc = y
                for j in range(2, k + 1):
                    nxt = add(pscale(j, list(y)), f"{j}*({vals[y]})")
                    if j == 2:
                        r2x(y, nxt)
                    else:
                        rsum(y, acc, nxt)
                    acc = nxt
                return
            raise ConstructionError(f"cannot express {vals[x]} * {vals[y]} = {vals[z]}")
        rel["xy"].append((x, y, z))

    r2x(ints[1], ints[2]) if N >= 2 else None
    for t in range(2, N):
        rsum(ints[1], ints[t], ints[t + 1])
    if spec.b2 != 1:
        rmul(ints[spec.b2], alpha, b2a)
    if n >= 2:
        rel["x2"].append((alpha, pw[2]))
    for t in range(2, n):
        rmul(alpha, pw[t], pw[t + 1])
    for t, q in mono.items():
        if abs(c[t]) != 1:
            rmul(ints[abs(c[t])], pw[t], q)
    for t in range(1, n):
        if c[t]:
            rsum(mono[t], S[t - 1], S[t])
    r2x(mono[n], S[n - 1])

    # exact sort
    from functools import cmp_to_key
    keys = sorted(vals, key=cmp_to_key(K.compare))
    for x, y in zip(keys, keys[1:]):
        if K.compare(x, y) == 0:
            raise ConstructionError(f"values {vals[x]} and {vals[y]} coincide")
    pos = {q: i for i, q in enumerate(keys)}
    relations = {k: [tuple(pos[q] for q in r) for r in rs] for k, rs in rel.items()}
    for k in ("2x", "x+y", "xy", "x2"):
        seen, uniq = set(), []
        for r in relations[k]:
            key = frozenset(r)
            if key not in seen:
                seen.add(key)
                uniq.append(r)
        relations[k] = uniq
    prog = RelationProgram(spec, [list(q) for q in keys], [vals[q] for q in keys],
                           pos[zero], pos[alpha], pos[one], relations,
                           [K.approx(q) for q in keys])
    prog.check()
    return prog


def check_relations(prog: RelationProgram) -> bool:
    """Every relation holds exactly in Q(alpha) for some reading of the table
    (the sorted order fixes which one)."""
    K = AlgebraicField(prog.spec)
    v = prog.values

    def eq(x, y):
        return K.compare(x, y) == 0

    def s(x, y):
        return padd(list(x), list(y))

    for i, j in prog.relations["2x"]:
        x, y = v[i], v[j]
        if not (eq(pscale(2, x), y) or eq(pscale(2, y), x) or eq(pscale(-1, x), y)):
            return False
    for i, j, k in prog.relations["x+y"]:
        x, y, z = v[i], v[j], v[k]
        if not (eq(s(x, y), z) or eq(s(x, z), y) or eq(s(y, z), x)):
            return False
    for i, j in prog.relations["x2"]:
        x, y = v[i], v[j]
        if not (eq(K.reduce(pmul(x, x)), y) or eq(K.reduce(pmul(y, y)), x)):
            return False
    for i, j, k in prog.relations["xy"]:
        x, y, z = v[i], v[j], v[k]
        if not (eq(K.reduce(pmul(x, y)), z) or eq(K.reduce(pmul(x, z)), y) or eq(K.reduce(pmul(y, z)), x)):
            return False
    return True
