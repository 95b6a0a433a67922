import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grouptool.errors import ParseError
from grouptool.linalg import (
    IntMatrix,
    cokernel_invariants,
    determinant,
    hermite_normal_form,
    integer_kernel_basis,
    parse_matrix,
    primitive,
    rank,
    rational_kernel_basis,
    rational_rank,
    smith_normal_form,
    solve_rational,
    sparse_rank,
)
from grouptool.corpus import proposition_bundle
from grouptool.extensions import coinvariant_matrix


def snf_holds(M):
    res = smith_normal_form(M)
    assert res.U @ M @ res.V == res.D
    assert abs(determinant(res.U)) == 1 and abs(determinant(res.V)) == 1
    assert res.D.is_diagonal()
    diag = res.D.diagonal()
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return res


matrices = st.integers(1, 8).flatmap(lambda r: st.integers(1, 8).flatmap(
    lambda c: st.lists(st.integers(-9, 9), min_size=r * c, max_size=r * c).map(
        lambda v: IntMatrix(r, c, tuple(v)))))


@given(matrices)
def test_snf_identities(M):
    res = snf_holds(M)
    assert res.rank == rank(M)


@given(matrices, st.randoms(use_true_random=False))
def test_cokernel_permutation_invariant(M, rnd):
    rows = M.tolist()
    rnd.shuffle(rows)
    cols = list(range(M.cols))
    rnd.shuffle(cols)
    P = IntMatrix.from_rows([[r[j] for j in cols] for r in rows], M.cols)
    assert cokernel_invariants(P) == cokernel_invariants(M)


def test_snf_examples():
    assert smith_normal_form(IntMatrix.identity(3)).D == IntMatrix.identity(3)
    assert smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]])).D.diagonal() == [1, 6]
    z = smith_normal_form(IntMatrix.zeros(2, 5))
    assert z.D == IntMatrix.zeros(2, 5) and z.rank == 0


def test_kernel_examples():
    assert integer_kernel_basis(IntMatrix.from_rows([[1, 1]])) in ([[1, -1]], [[-1, 1]], [(1, -1)])
    assert integer_kernel_basis(IntMatrix.identity(3)) == []
    assert len(rational_kernel_basis(IntMatrix.zeros(1, 4))) == 4


def test_cokernel_examples():
    assert cokernel_invariants(IntMatrix.zeros(3, 3)) == (3, [])
    assert cokernel_invariants(IntMatrix.from_rows([[2, 0], [0, 3]])) == (0, [6])
    E, _ = proposition_bundle()
    assert cokernel_invariants(coinvariant_matrix(E).transpose()) == (2, [])


@given(matrices)
def test_kernel_vectors_are_killed(M):
    for v in integer_kernel_basis(M):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M.tolist())
    assert len(integer_kernel_basis(M)) == M.cols - rank(M)


def test_hnf_shape():
    H = hermite_normal_form([[2, 4], [1, 1]])
    assert H == [[1, 1], [0, 2]]
    assert hermite_normal_form([[0, 0]]) == []


def test_rational_helpers():
    assert primitive([Fraction(1, 2), Fraction(1, 3)]) == (3, 2)
    assert primitive([2, 4]) == (1, 2)
    assert primitive([-2, 0]) == (-1, 0)
    assert solve_rational([[1, 1], [1, -1]], [2, 0]) == [1, 1]
    assert solve_rational([[1, 1], [1, 1]], [1, 2]) is None
    assert rational_rank([[1, 2], [Fraction(1, 2), 1]]) == 1
    assert sparse_rank([{0: 1, 1: 2}, {0: 2, 1: 4}, {2: 1}]) == 2


def test_parse_matrix():
    M = parse_matrix("2 3\n1 2 3\n4 5 6\n")
    assert M.tolist() == [[1, 2, 3], [4, 5, 6]]
    with pytest.raises(ParseError):
        parse_matrix("2 2 1 2 3")
    with pytest.raises(ParseError):
        parse_matrix("x")


def test_snf_on_fixed_random_batch():
    rnd = random.Random(7)
    for _ in range(100):
        r, c = rnd.randint(1, 8), rnd.randint(1, 8)
        snf_holds(IntMatrix(r, c, tuple(rnd.randint(-9, 9) for _ in range(r * c))))
