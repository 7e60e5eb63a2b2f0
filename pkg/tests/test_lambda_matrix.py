import csv
import io
import random
import warnings
from fractions import Fraction as F

import numpy as np
import pytest

from hexalink.algebra import DualQuaternion, cross_inner
from hexalink.generate import random_line
from hexalink.lambda_matrix import (
    AdvisoryWarning,
    build_lambda_matrix,
    exact_rank,
    lambda_rank,
    write_real_csv,
)
from hexalink.linkage import Linkage

from .conftest import oracle_add, oracle_prod, oracle_scale

# the six cyclic forms of the symmetric closure condition: left = right
_LEFT = [(1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 6), (5, 6, 1), (6, 1, 2)]
_RIGHT = [(6, 5, 4), (1, 6, 5), (2, 1, 6), (3, 2, 1), (4, 3, 2), (5, 4, 3)]


def _t_of(joint, ts):
    return ts[(joint - 1) % 3]


def _cyclic_form_residual(L, row, ts):
    """left - right of the i-th cyclic closure form, by the oracle."""
    left = [oracle_add(DualQuaternion.scalar(_t_of(j, ts)), -L[j - 1]) for j in _LEFT[row]]
    right = [oracle_add(DualQuaternion.scalar(_t_of(j, ts)), L[j - 1]) for j in _RIGHT[row]]
    return oracle_add(oracle_prod(*left), oracle_scale(oracle_prod(*right), -1))


def _random_linkage(rng):
    while True:
        try:
            return Linkage([random_line(rng, 9) for _ in range(6)])
        except ValueError:
            continue


def test_first_columns_are_g(ex1):
    M = build_lambda_matrix(ex1)
    g = M.g()
    for row in M.rows:
        assert row[0] == g.g3 and row[1] == g.g2 and row[2] == g.g1


def test_example_g1_vanishes(ex1):
    g = build_lambda_matrix(ex1).g()
    assert all(x == 0 for x in g.g1.primal)
    assert g.g1 == DualQuaternion.zero()
    assert g.g2 != DualQuaternion.zero() and g.g3 != DualQuaternion.zero()


def test_row1_last_column(ex1):
    M = build_lambda_matrix(ex1)
    h = ex1
    expected = oracle_add(oracle_prod(h[5], h[4], h[3]), oracle_prod(h[0], h[1], h[2]))
    assert M.row(1)[6].c == expected


def test_rows_are_negated_cyclic_forms():
    rng = random.Random(7)
    for _ in range(5):
        L = _random_linkage(rng)
        M = build_lambda_matrix(L)
        ts = [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)]
        got = M.contract(*ts)
        for r in range(6):
            assert got[r].c == oracle_scale(_cyclic_form_residual(L, r, ts), -1)


def test_contraction_vanishes_on_curve(ex1):
    M = build_lambda_matrix(ex1)
    for t in (F(1), F(-2), F(1, 2)):
        assert all(x == DualQuaternion.zero() for x in M.contract(F(5, 4) * t, t, t))
    assert any(x != DualQuaternion.zero() for x in M.contract(F(1), F(1), F(1)))


def test_example_rank(ex1):
    assert lambda_rank(build_lambda_matrix(ex1)) == 3


def test_real_form_layout(ex1):
    M = build_lambda_matrix(ex1)
    R = M.real_form
    assert len(R) == 48 and all(len(r) == 7 for r in R)
    for i in range(6):
        for k in range(8):
            for col in range(7):
                assert R[8 * i + k][col] == M.rows[i][col].c[k]


def test_float_rank_warns(ex1):
    M = build_lambda_matrix(ex1.as_float())
    with pytest.warns(AdvisoryWarning):
        assert lambda_rank(M, "tol") == 3
    with pytest.raises(ValueError):
        lambda_rank(M, "exact")


def test_exact_rank_matches_numpy():
    rng = random.Random(3)
    for _ in range(20):
        n, m, r = rng.randint(1, 8), rng.randint(1, 8), rng.randint(0, 5)
        A = np.array([[rng.randint(-5, 5) for _ in range(r)] for _ in range(n)], dtype=int).reshape(n, r)
        B = np.array([[rng.randint(-5, 5) for _ in range(m)] for _ in range(r)], dtype=int).reshape(r, m)
        C = A @ B
        rows = [[F(int(x), 3) for x in row] for row in C]
        assert exact_rank(rows) == np.linalg.matrix_rank(C.astype(float))


def test_csv_dump(ex1):
    M = build_lambda_matrix(ex1)
    buf = io.StringIO()
    text = write_real_csv(M, buf)
    assert buf.getvalue() == text
    rows = list(csv.reader(io.StringIO(text)))
    assert len(rows) == 48
    assert [[F(x) for x in r] for r in rows] == [[F(x) for x in r] for r in M.real_form]


def test_row_identities_random():
    rng = random.Random(11)
    for _ in range(10):
        L = _random_linkage(rng)
        M = build_lambda_matrix(L)
        g1, g2, g3 = M.g()
        zero = DualQuaternion.zero()
        A = M.combine([1, -1, 0, 1, -1, 0])
        assert A[0] == A[1] == A[2] == A[5] == zero
        assert A[3] == cross_inner(g2, g1)[0] * 2
        assert A[4] == cross_inner(g3, g1)[0] * 2
        B = M.combine([1, 0, -1, 1, 0, -1])
        assert B[0] == B[1] == B[2] == B[3] == zero
        assert B[4] == cross_inner(g3, g1)[0] * 2
        assert B[5] == cross_inner(g3, g2)[0] * 2


def test_rank_under_orientation_changes(ex1):
    rng = random.Random(2)
    L = _random_linkage(rng)
    canon = Linkage([h.canonical() for h in L])
    base = lambda_rank(build_lambda_matrix(canon))
    for _ in range(5):
        signs = [rng.choice((1, -1)) for _ in range(6)]
        recanon = Linkage([h.canonical() for h in L.with_orientation(signs)])
        assert lambda_rank(build_lambda_matrix(recanon)) == base
    # reversing every axis at once maps t -> -t and keeps the rank
    assert lambda_rank(build_lambda_matrix(ex1.with_orientation([-1] * 6))) == 3
    # a single flip matters: orientation is part of the linkage
    assert lambda_rank(build_lambda_matrix(ex1.with_orientation([1, -1, 1, 1, 1, 1]))) != 3
    with pytest.raises(ValueError):
        Linkage([h.canonical() for h in ex1])
