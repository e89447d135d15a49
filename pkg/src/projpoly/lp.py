"""Exact rational linear programming and Gordan certificates.

The solver is a dense two-phase simplex with Bland's rule over Fraction.
``decide_strict`` settles whether ``Mx > 0`` has a solution and always
returns a witness that can be checked independently.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import frac, mat, matvec

SIZE_LIMIT = 400


class LPError(ValueError):
    pass


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible", "unbounded"
    x: list | None = None
    value: Fraction | None = None


def _simplex_standard(A, b, c, max_iter=100000):
    """max c.x s.t. Ax = b, x >= 0 (b >= 0). Returns LPResult."""
    m = len(A)
    n = len(c)
    # phase 1 tableau with artificials n..n+m-1
    T = [list(A[i]) + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(r, col):
        pv = T[r][col]
        if pv != 1:
            inv = 1 / pv
            T[r] = [x * inv for x in T[r]]
        row = T[r]
        for i in range(m):
            if i != r:
                f = T[i][col]
                if f != 0:
                    Ti = T[i]
                    T[i] = [x - f * y if y else x for x, y in zip(Ti, row)]
        basis[r] = col

    def run(cost, allowed):
        it = 0
        while True:
            it += 1
            if it > max_iter:
                raise LPError("iteration limit")
            # reduced costs: cost_j - sum cost_basis * T[i][j]
            cb = [cost[basis[i]] for i in range(m)]
            enter = None
            for j in range(allowed):
                if j in basis_set:
                    continue
                rc = cost[j] - sum((cb[i] * T[i][j] for i in range(m) if cb[i] and T[i][j]), Fraction(0))
                if rc > 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            best = None
            leave = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave is None:
                return "unbounded"
            basis_set.discard(basis[leave])
            pivot(leave, enter)
            basis_set.add(enter)

    basis_set = set(basis)
    cost1 = [Fraction(0)] * n + [Fraction(-1)] * m
    run(cost1, width)
    infeas = sum((T[i][-1] for i in range(m) if basis[i] >= n), Fraction(0))
    if infeas > 0:
        return LPResult("infeasible")
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                basis_set.discard(basis[i])
                pivot(i, col)
                basis_set.add(col)
    keep = [i for i in range(m) if basis[i] < n]
    T = [T[i] for i in keep]
    basis = [basis[i] for i in keep]
    m = len(T)
    basis_set = set(basis)
    # drop artificial columns
    T = [r[:n] + [r[-1]] for r in T]
    status = run(list(c), n)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i in range(m):
        x[basis[i]] = T[i][-1]
    return LPResult("optimal", x, sum((ci * xi for ci, xi in zip(c, x)), Fraction(0)))


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), free: bool | Sequence[bool] = False) -> LPResult:
    """Maximize c.x subject to A_ub x <= b_ub and A_eq x = b_eq.

    Variables are nonnegative unless ``free`` says otherwise.
    """
    n = len(c)
    if isinstance(free, bool):
        free = [free] * n
    cols = []  # (original index, sign)
    for j in range(n):
        cols.append((j, 1))
        if free[j]:
            cols.append((j, -1))
    nub = len(A_ub)
    N = len(cols) + nub
    rows, rhs = [], []
    for k, (r, bv) in enumerate(zip(A_ub, b_ub)):
        row = [frac(r[j]) * s for j, s in cols] + [Fraction(int(i == k)) for i in range(nub)]
        rows.append(row)
        rhs.append(frac(bv))
    for r, bv in zip(A_eq, b_eq):
        rows.append([frac(r[j]) * s for j, s in cols] + [Fraction(0)] * nub)
        rhs.append(frac(bv))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    cost = [frac(c[j]) * s for j, s in cols] + [Fraction(0)] * nub
    if not rows:
        if any(x > 0 for x in cost):
            return LPResult("unbounded")
        return LPResult("optimal", [Fraction(0)] * n, Fraction(0))
    if len(rows) > SIZE_LIMIT or N > 4 * SIZE_LIMIT:
        raise LPError("LP exceeds the desk-scale size limit")
    res = _simplex_standard(rows, rhs, cost)
    if res.status != "optimal":
        return res
    x = [Fraction(0)] * n
    for k, (j, s) in enumerate(cols):
        x[j] += s * res.x[k]
    return LPResult("optimal", x, res.value)


def strictly_feasible(strict_rows=(), eq_rows=(), nonneg_rows=()) -> list | None:
    """Find x with S x > 0, E x = 0, N x >= 0, or return None.

    The system is homogeneous, so it is solved as max s with S x >= s,
    s <= 1. Empty ``strict_rows`` asks only for some x (the zero vector
    qualifies).
    """
    rows = list(strict_rows) + list(eq_rows) + list(nonneg_rows)
    if not rows:
        return []
    n = len(rows[0])
    if not strict_rows:
        return [Fraction(0)] * n
    # variables x (free), s
    A_ub, b_ub = [], []
    for r in strict_rows:
        A_ub.append([-frac(v) for v in r] + [Fraction(1)])
        b_ub.append(0)
    for r in nonneg_rows:
        A_ub.append([-frac(v) for v in r] + [Fraction(0)])
        b_ub.append(0)
    A_ub.append([Fraction(0)] * n + [Fraction(1)])
    b_ub.append(1)
    A_eq = [[frac(v) for v in r] + [Fraction(0)] for r in eq_rows]
    b_eq = [0] * len(A_eq)
    res = linprog([0] * n + [1], A_ub, b_ub, A_eq, b_eq, free=[True] * n + [True])
    if res.status != "optimal" or res.value <= 0:
        return None
    return res.x[:n]


def positive_combination_meet(G1, G2) -> tuple | None:
    """Decide whether relint cone(G1) meets relint cone(G2).

    G1, G2 are lists of generator vectors (possibly empty, meaning the cone
    {0}). Returns (lambda, mu) with all entries > 0 and G1 lambda = G2 mu,
    or None.
    """
    k1, k2 = len(G1), len(G2)
    if k1 == 0 and k2 == 0:
        return ((), ())
    d = len(G1[0]) if k1 else len(G2[0])
    # by homogeneity lambda, mu > 0 may be taken >= 1; shift to u, w >= 0:
    # G1 u - G2 w = G2 1 - G1 1
    A_eq, b_eq = [], []
    for i in range(d):
        A_eq.append([frac(G1[j][i]) for j in range(k1)] + [-frac(G2[j][i]) for j in range(k2)])
        b_eq.append(sum((frac(G2[j][i]) for j in range(k2)), Fraction(0))
                    - sum((frac(G1[j][i]) for j in range(k1)), Fraction(0)))
    res = linprog([0] * (k1 + k2), A_eq=A_eq, b_eq=b_eq)
    if res.status != "optimal":
        return None
    x = [v + 1 for v in res.x]
    return tuple(x[:k1]), tuple(x[k1:])


# Gordan alternative


@dataclass(frozen=True)
class Feasible:
    x: tuple

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Infeasible:
    y: tuple

    def __bool__(self):
        return False


@dataclass
class StrictSystem:
    """Does some x satisfy M x > 0 componentwise?"""

    M: list
    row_names: list | None = None

    def __post_init__(self):
        self.M = mat(self.M)
        if not self.M or not self.M[0]:
            raise LPError("a strict system needs at least one row and one column")
        if len({len(r) for r in self.M}) != 1:
            raise LPError("ragged matrix")

    @property
    def shape(self):
        return len(self.M), len(self.M[0])


def check_certificate(M, y) -> bool:
    """y >= 0, y != 0 and M^T y = 0: then M x > 0 has no solution."""
    M = mat(M)
    y = [frac(v) for v in y]
    if len(y) != len(M):
        raise LPError(f"certificate has length {len(y)} but the matrix has {len(M)} rows")
    if any(v < 0 for v in y) or all(v == 0 for v in y):
        return False
    n = len(M[0])
    return all(sum((M[i][j] * y[i] for i in range(len(M))), Fraction(0)) == 0 for j in range(n))


def decide_strict(M) -> Feasible | Infeasible:
    if isinstance(M, StrictSystem):
        M = M.M
    M = mat(M)
    m, n = len(M), len(M[0])
    if m > SIZE_LIMIT or n > SIZE_LIMIT:
        raise LPError("system exceeds the desk-scale size limit")
    # phase 1 search for y >= 0, M^T y = 0, sum y = 1
    A_eq = [[M[i][j] for i in range(m)] for j in range(n)] + [[Fraction(1)] * m]
    b_eq = [0] * n + [1]
    res = linprog([0] * m, A_eq=A_eq, b_eq=b_eq)
    if res.status == "optimal":
        y = tuple(res.x)
        assert check_certificate(M, y)
        return Infeasible(y)
    x = strictly_feasible(M)
    if x is None:
        raise LPError("neither alternative was found; solver inconsistency")
    assert all(v > 0 for v in matvec(M, x))
    return Feasible(tuple(x))
