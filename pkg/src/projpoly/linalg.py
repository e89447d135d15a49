"""Exact linear algebra over Fraction."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vec = list
Mat = list


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted by the exact kernel")
    return Fraction(x)


def vec(xs) -> list[Fraction]:
    return [frac(x) for x in xs]


def mat(rows) -> list[list[Fraction]]:
    return [vec(r) for r in rows]


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v):
    return [a + b for a, b in zip(u, v)]


def sub(u, v):
    return [a - b for a, b in zip(u, v)]


def scale(c, u):
    return [c * a for a in u]


def neg(u):
    return [-a for a in u]


def transpose(M):
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    Bt = transpose(B)
    return [[dot(r, c) for c in Bt] for r in A]


def matvec(A, v):
    return [dot(r, v) for r in A]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n):
    return [Fraction(0)] * n


def is_zero(v) -> bool:
    return all(a == 0 for a in v)


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [list(map(frac, r)) for r in M]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def nullspace(M, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : Mx = 0}."""
    if not M:
        if ncols is None:
            raise ValueError("empty matrix needs ncols")
        return identity(ncols)
    n = len(M[0])
    R, piv = rref(M)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -R[i][f]
        basis.append(x)
    return basis


def row_basis(vectors) -> list[list[Fraction]]:
    """A basis of the span, taken from the rref (canonical for the span)."""
    if not vectors:
        return []
    R, _ = rref(vectors)
    return R


def independent_subset(vectors) -> list[int]:
    """Indices of a maximal linearly independent subset, greedy in order."""
    chosen: list[int] = []
    basis: list = []
    for i, v in enumerate(vectors):
        if rank(basis + [v]) > len(basis):
            basis.append(v)
            chosen.append(i)
    return chosen


def solve(A, b):
    """One solution of Ax = b or None."""
    if not A:
        return None
    n = len(A[0])
    aug = [list(r) + [frac(bi)] for r, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def inverse(M):
    n = len(M)
    aug = [list(map(frac, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R]


def det(M) -> Fraction:
    A = [list(map(frac, r)) for r in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def in_span(v, vectors) -> bool:
    if is_zero(v):
        return True
    if not vectors:
        return False
    return rank(vectors) == rank(list(vectors) + [v])


def primitive(v) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, keeping its direction."""
    v = vec(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def integer_row(v) -> list[int]:
    return list(primitive(v))


def fmt(x) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_vector(s: str) -> list[Fraction]:
    return [Fraction(p.strip()) for p in s.replace(";", ",").split(",") if p.strip()]


def complement_basis(vectors: Sequence, n: int) -> list[list[Fraction]]:
    """Standard unit vectors completing ``vectors`` to a basis of Q^n."""
    basis = list(row_basis(vectors)) if vectors else []
    out = []
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        if rank(basis + [e]) > len(basis):
            basis.append(e)
            out.append(e)
    return out


def orthogonal_complement(vectors: Sequence, n: int) -> list[list[Fraction]]:
    if not vectors:
        return identity(n)
    return nullspace(list(vectors))
