import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bitrade_lab.linalg import (
    IntMatrix,
    NotSquare,
    det_bareiss,
    hnf_row_lattice,
    integer_kernel,
    snf,
)
from oracles import det_cofactor, rational_rank, snf_diagonal_oracle


def matrices(max_rows=5, max_cols=5, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )


def square_matrices(max_n=5, lo=-9, hi=9):
    return st.integers(0, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def check_snf(m: IntMatrix):
    res = snf(m)
    assert res.u @ m @ res.v == res.d
    assert abs(det_bareiss(res.u)) == 1
    assert abs(det_bareiss(res.v)) == 1
    diag = res.diagonal
    for i in range(m.nrows):
        for j in range(m.ncols):
            if i != j:
                assert res.d[i, j] == 0
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[: len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return res


def test_snf_diag_2_3():
    assert snf(IntMatrix.diagonal([2, 3])).diagonal == [1, 6]


def test_snf_zero_matrix():
    res = snf(IntMatrix.zeros(3, 3))
    assert res.d == IntMatrix.zeros(3, 3)
    assert res.u == IntMatrix.identity(3)
    assert res.v == IntMatrix.identity(3)


def test_snf_intercalate_relations():
    # rows r+c+s for the four white triples of the intercalate; columns r1 r2 c1 c2 s1 s2
    m = IntMatrix.from_rows(
        [
            [1, 0, 1, 0, 1, 0],
            [1, 0, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 1],
            [0, 1, 0, 1, 1, 0],
        ]
    )
    res = check_snf(m)
    assert res.diagonal == [1, 1, 1, 2]
    assert res.rank == 4


def test_snf_big_entries():
    m = IntMatrix.from_rows([[2**70, 3**50], [5**40, 7**30]])
    res = check_snf(m)
    assert res.diagonal == snf_diagonal_oracle(m.rows())


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_snf_properties(rows):
    check_snf(IntMatrix.from_rows(rows))


@settings(max_examples=150, deadline=None)
@given(matrices(4, 4, -6, 6))
def test_snf_matches_determinantal_divisors(rows):
    m = IntMatrix.from_rows(rows)
    diag = [x for x in snf(m).diagonal if x]
    assert diag == snf_diagonal_oracle(rows)
    assert len(diag) == rational_rank(rows)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_snf_transpose_same_diagonal(rows):
    m = IntMatrix.from_rows(rows)
    assert snf(m).diagonal == snf(m.transpose()).diagonal


def test_hnf_examples():
    assert hnf_row_lattice(IntMatrix.from_rows([[2, 0], [0, 3]])).rows() == [[2, 0], [0, 3]]
    assert hnf_row_lattice(IntMatrix.from_rows([[1, 1], [1, -1]])).rows() == [[1, 1], [0, 2]]
    out = hnf_row_lattice(IntMatrix.from_rows([[0, 0]]))
    assert out.nrows == 0 and out.ncols == 2


@settings(max_examples=200, deadline=None)
@given(matrices(), st.data())
def test_hnf_invariant_under_unimodular_row_ops(rows, data):
    m = IntMatrix.from_rows(rows)
    h = hnf_row_lattice(m)
    a = m.rows()
    for _ in range(data.draw(st.integers(0, 6))):
        i = data.draw(st.integers(0, len(a) - 1))
        j = data.draw(st.integers(0, len(a) - 1))
        if i != j:
            q = data.draw(st.integers(-3, 3))
            a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        else:
            a[i] = [-x for x in a[i]]
    a.append([0] * m.ncols)
    assert hnf_row_lattice(IntMatrix.from_rows(a, ncols=m.ncols)) == h
    assert h.nrows == rational_rank(rows)


def test_det_examples():
    assert det_bareiss(IntMatrix.identity(5)) == 1
    assert det_bareiss(IntMatrix.from_rows([[2]])) == 2
    assert det_bareiss(IntMatrix.zeros(0, 0)) == 1
    with pytest.raises(NotSquare):
        det_bareiss(IntMatrix.zeros(2, 3))


def test_det_exp6_reduced_laplacian():
    k = 6
    t = [[-4 if i == j else 2 if (i - j) % k in (1, k - 1) else 0 for j in range(k)] for i in range(k)]
    minus_tbar = IntMatrix.from_rows([[-x for x in r[1:]] for r in t[1:]])
    assert det_bareiss(minus_tbar) == 192


@settings(max_examples=300, deadline=None)
@given(square_matrices())
def test_det_matches_cofactor(rows):
    n = len(rows)
    m = IntMatrix.from_rows(rows, ncols=n)
    assert det_bareiss(m) == det_cofactor(rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_integer_kernel(rows):
    m = IntMatrix.from_rows(rows)
    k = integer_kernel(m)
    assert k.nrows == m.ncols - rational_rank(rows)
    for row in k.rows():
        assert all(sum(a * b for a, b in zip(mr, row)) == 0 for mr in rows)
    # the kernel basis is saturated: its HNF has unit gcd of maximal minors
    if k.nrows:
        assert [x for x in snf(k).diagonal if x] == [1] * k.nrows


def test_json_round_trip_big():
    m = IntMatrix.from_rows([[2**80, -1], [0, 3]])
    data = m.to_json()
    assert data[0][0] == str(2**80)
    assert IntMatrix.from_json(data) == m


def test_matmul_shape_mismatch():
    with pytest.raises(ValueError):
        IntMatrix.identity(2) @ IntMatrix.identity(3)
