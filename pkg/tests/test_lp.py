from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from projpoly import linalg as la
from projpoly.certificates import SymmetryError, unbalance_system
from projpoly.fixtures import G_CERTIFICATE, G_UNBALANCE_MATRIX, dodecagon, signed_permutations, square
from projpoly.geometry import hull
from projpoly.lp import Feasible, Infeasible, LPError, check_certificate, decide_strict, linprog


def test_matrix_certificate():
    assert check_certificate(G_UNBALANCE_MATRIX, G_CERTIFICATE)


def test_trivial_certificates():
    assert not check_certificate([[1]], [1])
    assert check_certificate([[1], [-1]], [1, 1])
    assert not check_certificate([[1], [-1]], [0, 0])
    assert not check_certificate([[1], [-1]], [-1, -1])


def test_certificate_length_mismatch():
    with pytest.raises(LPError):
        check_certificate([[1], [-1]], [1])


def test_matrix_is_infeasible():
    res = decide_strict(G_UNBALANCE_MATRIX)
    assert isinstance(res, Infeasible)
    assert check_certificate(G_UNBALANCE_MATRIX, res.y)


def test_identity_feasible():
    res = decide_strict(la.identity(4))
    assert isinstance(res, Feasible)
    assert all(v > 0 for v in la.matvec(la.identity(4), res.x))


def test_g_system_is_the_matrix():
    S = unbalance_system(dodecagon())
    assert sorted(map(tuple, S.M)) == sorted(tuple(map(F, r)) for r in G_UNBALANCE_MATRIX)


def test_square_has_only_sign_rows():
    S = unbalance_system(square())
    assert S.shape == (2, 6)
    assert isinstance(decide_strict(S), Feasible)


def test_scaled_g_same_rows_up_to_scaling():
    S1 = unbalance_system(dodecagon())
    S2 = unbalance_system(hull(signed_permutations([(16, 10), (14, 14)])))

    def normalized(M):
        out = set()
        for r in M:
            k = next(abs(x) for x in r if x)
            out.add(tuple(x / k for x in r))
        return out
    assert normalized(S1.M) == normalized(S2.M)
    assert isinstance(decide_strict(S2), Infeasible)


def test_unsymmetric_polygon_rejected():
    with pytest.raises(SymmetryError):
        unbalance_system(hull([(2, 0), (0, 1), (-1, 0), (0, -1)]))


def test_linprog_small():
    # max x + y with x + 2y <= 4, 3x + y <= 6
    res = linprog([1, 1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.status == "optimal"
    assert res.x == [F(8, 5), F(6, 5)]


def test_linprog_infeasible():
    assert linprog([0], A_ub=[[1], [-1]], b_ub=[-1, -1]).status == "infeasible"


rows = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(rows)
def test_decide_strict_alternatives(M):
    res = decide_strict(M)
    if isinstance(res, Infeasible):
        assert check_certificate(M, res.y)
    else:
        assert all(v > 0 for v in la.matvec(la.mat(M), res.x))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3).filter(any),
       st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=6))
def test_planted_feasible_point_recovered(x, raw):
    # keep rows with r.x > 0 and flip the ones with r.x < 0
    M = []
    for r in raw:
        s = sum(a * b for a, b in zip(r, x))
        if s:
            M.append(r if s > 0 else [-a for a in r])
    if not M:
        return
    assert isinstance(decide_strict(M), Feasible)
