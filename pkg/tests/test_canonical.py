import pytest
from hypothesis import given, settings, strategies as st

from idempotent_forge.canonical import (
    WeyrSequence,
    characteristic_polynomial,
    frobenius_decomposition,
    frobenius_form,
    frobenius_invariant_factors,
    generalized_eigenspace,
    invariant_factors,
    jordan_type,
    minimal_polynomial,
    spectral_split,
    weyr_sequence,
)
from idempotent_forge.fields import GF, QQ
from idempotent_forge.matrix import Matrix, block_diag, companion, conjugate, jordan_block
from idempotent_forge.poly import Polynomial, strip_roots

from conftest import FIELDS, invertibles, matrices

X = Polynomial.x(QQ)


def M(rows, field=QQ):
    return Matrix(field, rows)


def test_minimal_polynomial_examples():
    assert minimal_polynomial(Matrix.identity(QQ, 3)) == X - 1
    assert minimal_polynomial(jordan_block(0, 2, QQ)) == X**2
    assert minimal_polynomial(block_diag([jordan_block(0, 2, QQ), M([[0]])])) == X**2


def test_invariant_factor_examples():
    assert invariant_factors(Matrix.identity(QQ, 2)) == [X - 1, X - 1]
    f = X**2 - X - 1
    assert invariant_factors(companion(f)) == [f]
    assert invariant_factors(M([[1, 0], [0, 2]])) == [(X - 1) * (X - 2)]
    assert invariant_factors(Matrix.zeros(QQ, 2)) == [X, X]


def test_frobenius_examples():
    C = companion(X**2 - X - 1)
    F, S = frobenius_form(C)
    assert F == C and conjugate(S, F) == C
    F, S = frobenius_form(M([[2, 0], [0, 1]]))
    assert F == M([[0, -2], [1, 3]])
    F, S = frobenius_form(Matrix.zeros(QQ, 2))
    assert F.is_zero()


def test_weyr_examples():
    assert tuple(weyr_sequence(jordan_block(0, 3, QQ), 0)) == (1, 1, 1)
    assert tuple(weyr_sequence(Matrix.zeros(QQ, 3), 0)) == (3,)
    A = block_diag([jordan_block(5, 2, QQ), jordan_block(5, 1, QQ)])
    assert tuple(weyr_sequence(A, 5)) == (2, 1)
    assert tuple(weyr_sequence(A, 4)) == ()


def test_weyr_sequence_type():
    w = WeyrSequence((2, 1, 0, 0))
    assert tuple(w) == (2, 1) and w[1] == 2 and w[3] == 0
    assert w.conjugate() == (2, 1)
    assert WeyrSequence((3, 1)).conjugate() == (2, 1, 1)
    with pytest.raises(IndexError):
        w[0]


def test_jordan_type_examples():
    assert jordan_type(jordan_block(0, 3, QQ), 0).sizes == (3,)
    jt = jordan_type(block_diag([jordan_block(0, 2, QQ), jordan_block(0, 1, QQ)]), 0)
    assert sorted(jt.sizes) == [1, 2]
    assert jt.count(2) == 1 and jt.count(3) == 0


def test_spectral_split_examples():
    d = spectral_split(M([[1, 0], [0, 2]]), 1, 2).dims()
    assert d == {"part_alpha": 1, "part_beta": 1, "part_zero": 0, "part_t": 0, "part_coprime": 0}
    d = spectral_split(companion(X**2 - X - 1), 1, 2).dims()
    assert d["part_coprime"] == 2 and sum(d.values()) == 2
    d = spectral_split(jordan_block(0, 2, QQ), 1, -1).dims()
    assert d["part_zero"] == 2 and "part_t" not in d


def _check_chains(A, lam):
    jt = jordan_type(A, lam)
    B = A.shift(A.field.coerce(lam))
    vecs = []
    for ch in jt.chains:
        assert not any(B.apply(ch[0]))
        for lo, hi in zip(ch, ch[1:]):
            assert B.apply(hi) == tuple(lo)
        vecs.extend(ch)
    dim = len(generalized_eigenspace(A, lam))
    assert len(vecs) == dim
    if vecs:
        assert Matrix.from_columns(A.field, vecs).rank() == dim
    assert tuple(sorted(jt.sizes, reverse=True)) == weyr_sequence(A, lam).conjugate()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_invariant_factor_properties(field):
    @settings(deadline=None)
    @given(matrices(field, 1, 6))
    def check(A):
        fs = invariant_factors(A)
        prod = Polynomial.one(field)
        for f in fs:
            assert f.is_monic() and f.degree >= 1
            prod = prod * f
        for f, g in zip(fs, fs[1:]):
            assert not (g % f)
        assert prod.degree == A.rows
        assert prod == characteristic_polynomial(A)
        assert fs[-1] == minimal_polynomial(A)
        assert A.poly_eval(fs[-1]).is_zero()

    check()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_frobenius_transform(field):
    @settings(deadline=None)
    @given(matrices(field, 1, 6))
    def check(A):
        F, S, fs = frobenius_decomposition(A)
        assert conjugate(S, F) == A
        assert F == block_diag([companion(f) for f in fs], field=field)
        assert fs == invariant_factors(A)

    check()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_weyr_and_chains(field):
    @settings(deadline=None)
    @given(matrices(field, 1, 6), st.integers(0, 3))
    def check(A, lam):
        w = weyr_sequence(A, lam)
        vals = tuple(w)
        assert all(a >= b for a, b in zip(vals, vals[1:]))
        assert sum(vals) == len(generalized_eigenspace(A, lam))
        _check_chains(A, lam)

    check()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_spectral_split_invariants(field):
    @settings(deadline=None)
    @given(matrices(field, 1, 6), st.sampled_from([(1, 2), (1, 1), (2, -2), (1, -1), (3, 1)]))
    def check(A, ab):
        a, b = field.coerce(ab[0]), field.coerce(ab[1])
        if not a or not b:
            return
        split = spectral_split(A, a, b)
        assert sum(split.dims().values()) == A.rows
        assert split.global_basis.rank() == A.rows
        rs = [p.restriction for p in split.parts.values() if p.dim]
        assert conjugate(split.global_basis, block_diag(rs, field=field)) == A
        special = list(split.scalars.values())
        expected = [s for s in (strip_roots(f, special)[0] for f in invariant_factors(A)) if s.degree >= 1]
        R = split.parts["part_coprime"].restriction
        got = invariant_factors(R) if R.rows else []
        assert got == expected
        for s in special:
            if R.rows:
                assert R.shift(s).rank() == R.rows

    check()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_similarity_invariance(field):
    @settings(deadline=None)
    @given(st.data())
    def check(data):
        A = data.draw(matrices(field, 1, 5))
        S = data.draw(invertibles(field, A.rows))
        B = conjugate(S, A)
        assert invariant_factors(B) == invariant_factors(A)
        assert frobenius_invariant_factors(B) == frobenius_invariant_factors(A)
        for lam in range(3):
            assert weyr_sequence(B, lam) == weyr_sequence(A, lam)
        assert B.rank() == A.rank()

    check()


def test_cyclic_decomposition_beyond_pairs():
    # distinct eigenvalues: no standard basis vector or pair sum is cyclic in general
    A = M([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    F, S, fs = frobenius_decomposition(A)
    assert fs == [(X - 1) * (X - 2) * (X - 3)]
    assert conjugate(S, F) == A
    G = GF(2)
    A = Matrix(G, [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    F, S, fs = frobenius_decomposition(A)
    assert conjugate(S, F) == A
    assert fs == invariant_factors(A)
