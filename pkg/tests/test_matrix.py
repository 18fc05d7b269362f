from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from idempotent_forge.canonical import minimal_polynomial
from idempotent_forge.composite import complementary
from idempotent_forge.fields import GF, QQ
from idempotent_forge.matrix import (
    Matrix,
    SingularMatrix,
    block_diag,
    companion,
    conjugate,
    inverse,
    jordan_block,
    kernel_basis,
    mat_arith,
    phi,
    phi_idempotents,
    rank,
    solve,
)
from idempotent_forge.poly import Polynomial

from conftest import FIELDS, matrices, monic_polys


def M(rows, field=QQ):
    return Matrix(field, rows)


def test_mat_arith_examples():
    E11, E22 = M([[1, 0], [0, 0]]), M([[0, 0], [0, 1]])
    assert mat_arith(mat_arith(E11, 1, "scalar_mul"), mat_arith(E22, 2, "scalar_mul"), "add") == M([[1, 0], [0, 2]])
    assert mat_arith(E11, E22, "mul").is_zero()
    with pytest.raises(ValueError):
        mat_arith(E11, M([[1]]), "add")


def test_rank_and_kernel_examples():
    assert rank(Matrix.identity(QQ, 3)) == 3
    assert rank(Matrix.zeros(QQ, 2)) == 0
    (v,) = kernel_basis(M([[1, 2], [2, 4]]))
    assert v[0] == -2 * v[1] and v[1] != 0


def test_solve_examples():
    b = (Fraction(3), Fraction(-1, 2))
    assert solve(Matrix.identity(QQ, 2), b) == b
    assert solve(Matrix.zeros(QQ, 2), (1, 0)) is None
    x = solve(M([[1, 1], [0, 0]]), (3, 0))
    assert x[0] + x[1] == 3


def test_inverse_examples():
    assert inverse(Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 3)
    assert inverse(M([[2, 0], [0, 3]])) == M([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])
    with pytest.raises(SingularMatrix):
        inverse(jordan_block(0, 2, QQ))


def test_companion_examples():
    assert companion(Polynomial(QQ, [-5, 1])) == M([[5]])
    assert companion(Polynomial(QQ, [0, 0, 1])) == M([[0, 0], [1, 0]])
    assert companion(Polynomial(QQ, [-1, -1, 1])) == M([[0, 1], [1, 1]])
    with pytest.raises(ValueError):
        companion(Polynomial(QQ, [1, 2]))
    with pytest.raises(ValueError):
        companion(Polynomial.one(QQ))


def test_jordan_block_examples():
    assert jordan_block(7, 1, QQ) == M([[7]])
    assert jordan_block(0, 2, QQ) == M([[0, 1], [0, 0]])
    J = jordan_block(5, 3, QQ)
    assert all(J[i, i] == 5 for i in range(3)) and J[0, 1] == J[1, 2] == 1 and J[0, 2] == 0


def test_block_diag_examples():
    A = M([[1, 2], [3, 4]])
    assert block_diag([A]) == A
    assert block_diag([M([[1]]), M([[2]])]) == M([[1, 0], [0, 2]])
    D = block_diag([jordan_block(0, 2, QQ), M([[3]])])
    assert D == M([[0, 1, 0], [0, 0, 0], [0, 0, 3]])


def test_phi_examples():
    assert phi(1, 2, M([[0]])) == M([[1, 0], [1, 2]])
    A = phi(1, -1, companion(Polynomial(QQ, [0, 0, 1])))
    assert A.rows == 4
    assert minimal_polynomial(A) == Polynomial(QQ, [1, 0, -2, 0, 1])
    with pytest.raises(ValueError):
        phi(0, 1, M([[1]]))


def test_conjugate_examples():
    N = M([[1, 2], [3, 4]])
    assert conjugate(Matrix.identity(QQ, 2), N) == N
    S = M([[0, 1], [1, 0]])
    assert conjugate(S, Matrix.zeros(QQ, 2)).is_zero()
    assert conjugate(S, M([[1, 0], [0, 2]])) == M([[2, 0], [0, 1]])
    with pytest.raises(SingularMatrix):
        conjugate(Matrix.zeros(QQ, 2), N)


def test_field_mismatch():
    with pytest.raises(ValueError):
        M([[1]], QQ) + M([[1]], GF(3))


def test_empty_matrix():
    Z = Matrix.zeros(QQ, 0)
    assert Z.inverse() == Z
    assert Z.rank() == 0


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_companion_minimal_polynomial(field):
    @given(monic_polys(field, 1, 6))
    def check(P):
        assert minimal_polynomial(companion(P)) == P

    check()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_phi_idempotent_pair(field):
    @settings(deadline=None)
    @given(matrices(field, 1, 4), st.sampled_from([1, 2, 3]), st.sampled_from([1, 2, 4]))
    def check(A, a, b):
        a, b = field.coerce(a), field.coerce(b)
        if not a or not b:
            return
        P, Q = phi_idempotents(a, b, A)
        assert P.is_idempotent() and Q.is_idempotent()
        assert P.scale(a) + Q.scale(b) == phi(a, b, A)
        assert complementary(P, Q)

    check()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_rank_nullity(field):
    @given(matrices(field, 1, 5))
    def check(A):
        ker = kernel_basis(A)
        assert A.rank() + len(ker) == A.cols
        for v in ker:
            assert not any(A.apply(v))

    check()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_inverse_and_solve(field):
    @given(matrices(field, 1, 5))
    def check(A):
        n = A.rows
        if A.rank() == n:
            B = A.inverse()
            assert A @ B == Matrix.identity(field, n) == B @ A
        b = A.column(0)
        x = A.solve(b)
        assert x is not None and A.apply(x) == tuple(b)

    check()
