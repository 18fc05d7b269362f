"""Exact dense matrices and the structured block builders.

Entries are raw canonical field values (see :mod:`idempotent_forge.fields`).
Vectors are plain tuples of such values.  Elimination always takes the first
nonzero pivot in column order so kernels and certificates are reproducible.
"""

from __future__ import annotations

from .fields import Field, FieldMismatch, Scalar
from .poly import Polynomial

__all__ = [
    "Matrix",
    "SingularMatrix",
    "Echelon",
    "companion",
    "jordan_block",
    "block_diag",
    "phi",
    "conjugate",
    "rank",
    "kernel_basis",
    "solve",
    "inverse",
    "mat_arith",
]


class SingularMatrix(ArithmeticError):
    pass


class Matrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data, cols: int | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        self._set(field, rows, cols)

    def _set(self, field, rows, cols):
        self.field = field
        self.data = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def _raw(cls, field, rows, cols=None):
        m = object.__new__(cls)
        rows = tuple(tuple(r) for r in rows)
        m._set(field, rows, cols if cols is not None else (len(rows[0]) if rows else 0))
        return m

    @classmethod
    def zeros(cls, field, rows, cols=None):
        cols = rows if cols is None else cols
        z = field.zero
        return cls._raw(field, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def scalar(cls, field, n, c):
        c = field.coerce(c)
        z = field.zero
        return cls._raw(field, [[c if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, columns, rows=None):
        columns = list(columns)
        if not columns:
            return cls._raw(field, [()] * (rows or 0), 0)
        n = len(columns[0])
        return cls._raw(field, [[c[i] for c in columns] for i in range(n)], len(columns))

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def tolist(self):
        return [list(r) for r in self.data]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.field, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.render(x) for x in r) for r in self.data)
        return f"Matrix[{self.field!r}]({self.rows}x{self.cols}: {body})"

    def _same(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        F = self.field
        return Matrix._raw(
            F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols
        )

    def __sub__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        F = self.field
        return Matrix._raw(
            F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols
        )

    def __neg__(self):
        F = self.field
        return Matrix._raw(F, [[F.neg(a) for a in r] for r in self.data], self.cols)

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        return Matrix._raw(F, [[F.mul(c, a) for a in r] for r in self.data], self.cols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other):
        self._same(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for r in self.data:
            out.append([F.norm(sum(a * b for a, b in zip(r, c) if a)) for c in cols])
        return Matrix._raw(F, out, other.cols)

    def apply(self, v):
        """Matrix-vector product on a tuple."""
        F = self.field
        return tuple(F.norm(sum(a * b for a, b in zip(r, v) if a)) for r in self.data)

    def __pow__(self, k: int):
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        result, base = Matrix.identity(self.field, self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self):
        return Matrix._raw(self.field, list(zip(*self.data)) if self.rows else [], self.rows)

    T = property(transpose)

    def shift(self, s):
        """self - s*I."""
        F = self.field
        s = F.coerce(s)
        return Matrix._raw(
            F,
            [[F.sub(a, s) if i == j else a for j, a in enumerate(r)] for i, r in enumerate(self.data)],
            self.cols,
        )

    def poly_eval(self, f: Polynomial):
        """f(self) by Horner."""
        n = self.rows
        F = self.field
        acc = Matrix.zeros(F, n)
        for c in reversed(f.coeffs):
            acc = (acc @ self).shift(F.neg(c))
        return acc

    def is_zero(self):
        return not any(any(r) for r in self.data)

    def is_idempotent(self):
        return self.is_square and self @ self == self

    def block(self, r0, r1, c0, c1):
        return Matrix._raw(self.field, [r[c0:c1] for r in self.data[r0:r1]], c1 - c0)

    # elimination

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        F = self.field
        m = [list(r) for r in self.data]
        pivots = []
        row = 0
        for col in range(self.cols):
            piv = next((i for i in range(row, self.rows) if m[i][col]), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = F.inv(m[row][col])
            m[row] = [F.mul(inv, x) for x in m[row]]
            for i in range(self.rows):
                if i != row and m[i][col]:
                    c = m[i][col]
                    m[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == self.rows:
                break
        return Matrix._raw(F, m, self.cols), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right kernel, one vector per free column."""
        F = self.field
        R, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in set(pivots)]
        basis = []
        for f in free:
            v = [F.zero] * self.cols
            v[f] = F.one
            for i, p in enumerate(pivots):
                v[p] = F.neg(R.data[i][f])
            basis.append(tuple(v))
        return basis

    def solve(self, b):
        """Some x with self @ x = b, or None when inconsistent."""
        F = self.field
        b = tuple(F.coerce(x) for x in b)
        if len(b) != self.rows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.rows}")
        aug = Matrix._raw(F, [r + (x,) for r, x in zip(self.data, b)], self.cols + 1)
        R, pivots = aug.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        x = [F.zero] * self.cols
        for i, p in enumerate(pivots):
            x[p] = R.data[i][self.cols]
        return tuple(x)

    def inverse(self):
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        F = self.field
        if n == 0:
            return self
        I = Matrix.identity(F, n)
        aug = Matrix._raw(F, [r + s for r, s in zip(self.data, I.data)], 2 * n)
        R, pivots = aug.rref()
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise SingularMatrix("matrix is singular")
        return Matrix._raw(F, [r[n:] for r in R.data], n)


def mat_arith(A: Matrix, B, op: str) -> Matrix:
    """``op`` in {"add", "sub", "mul", "scalar_mul"}; for scalar_mul B is a scalar."""
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A @ B
    if op == "scalar_mul":
        return A.scale(B)
    raise ValueError(f"unknown operation {op!r}")


def rank(A: Matrix) -> int:
    return A.rank()


def kernel_basis(A: Matrix):
    return A.kernel_basis()


def solve(A: Matrix, b):
    return A.solve(b)


def inverse(A: Matrix) -> Matrix:
    return A.inverse()


class Echelon:
    """Incremental span of vectors, remembering how each reduced row was built.

    ``add`` inserts a vector if it is independent of those already accepted;
    ``express`` writes a vector in terms of the accepted vectors (in insertion
    order) or returns None when it lies outside the span.
    """

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self._rows = []  # (pivot, reduced vector, combination over accepted)
        self.vectors = []

    def __len__(self):
        return len(self.vectors)

    def copy(self) -> "Echelon":
        other = Echelon(self.field, self.dim)
        other._rows = list(self._rows)
        other.vectors = list(self.vectors)
        return other

    def _reduce(self, v):
        F = self.field
        v = list(v)
        combo = {}
        for p, row, rc in self._rows:
            c = v[p]
            if not c:
                continue
            c = F.div(c, row[p])
            for k in range(p, self.dim):
                if row[k]:
                    v[k] = F.sub(v[k], F.mul(c, row[k]))
            for idx, w in rc.items():
                combo[idx] = F.add(combo.get(idx, F.zero), F.mul(c, w))
        return v, combo

    def contains(self, v) -> bool:
        residual, _ = self._reduce(v)
        return not any(residual)

    def add(self, v) -> bool:
        F = self.field
        residual, combo = self._reduce(v)
        pivot = next((k for k, x in enumerate(residual) if x), None)
        if pivot is None:
            return False
        idx = len(self.vectors)
        # residual = v - sum combo[i] * vectors[i]
        rc = {i: F.neg(c) for i, c in combo.items() if c}
        rc[idx] = F.one
        self._rows.append((pivot, tuple(residual), rc))
        self.vectors.append(tuple(v))
        return True

    def express(self, v):
        F = self.field
        residual, combo = self._reduce(v)
        if any(residual):
            return None
        out = [F.zero] * len(self.vectors)
        for i, c in combo.items():
            out[i] = c
        return out


def companion(P: Polynomial) -> Matrix:
    """Companion matrix with subdiagonal ones and last column (a_0, ..., a_{n-1}),

    where ``P = X^n - a_{n-1} X^{n-1} - ... - a_0``.
    """
    if P.degree < 1:
        raise ValueError("companion matrix of a constant polynomial")
    if not P.is_monic():
        raise ValueError("companion matrix needs a monic polynomial")
    F = P.field
    n = P.degree
    M = [[F.zero] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = F.one
    for i in range(n):
        M[i][n - 1] = F.neg(P.coeffs[i])
    return Matrix._raw(F, M, n)


def jordan_block(lam, n: int, field: Field | None = None) -> Matrix:
    """lam on the diagonal, ones on the superdiagonal."""
    if n < 1:
        raise ValueError("Jordan block of size 0")
    if field is None:
        if not isinstance(lam, Scalar):
            raise TypeError("pass a Scalar or give the field explicitly")
        field = lam.field
    lam = field.coerce(lam)
    M = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = lam
        if i + 1 < n:
            M[i][i + 1] = field.one
    return Matrix._raw(field, M, n)


def block_diag(blocks, field: Field | None = None) -> Matrix:
    blocks = list(blocks)
    if field is None:
        if not blocks:
            raise ValueError("empty block list needs an explicit field")
        field = blocks[0].field
    for b in blocks:
        if b.field != field:
            raise FieldMismatch(f"{b.field!r} vs {field!r}")
        if not b.is_square:
            raise ValueError("block_diag takes square blocks")
    n = sum(b.rows for b in blocks)
    M = [[field.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.data):
            M[off + i][off : off + b.cols] = r
        off += b.rows
    return Matrix._raw(field, M, n)


def phi(alpha, beta, A: Matrix) -> Matrix:
    """The 2m x 2m block matrix [[alpha I, A], [I, beta I]]."""
    F = A.field
    alpha, beta = F.coerce(alpha), F.coerce(beta)
    if not alpha or not beta:
        raise ValueError("alpha and beta must be nonzero")
    if not A.is_square:
        raise ValueError("phi takes a square matrix")
    m = A.rows
    z, o = F.zero, F.one
    M = []
    for i in range(m):
        M.append([alpha if j == i else z for j in range(m)] + list(A.data[i]))
    for i in range(m):
        M.append([o if j == i else z for j in range(m)] + [beta if j == i else z for j in range(m)])
    return Matrix._raw(F, M, 2 * m)


def phi_idempotents(alpha, beta, A: Matrix):
    """(P, Q) idempotent with alpha*P + beta*Q = phi(alpha, beta, A)."""
    F = A.field
    alpha, beta = F.coerce(alpha), F.coerce(beta)
    m = A.rows
    z, o = F.zero, F.one
    ia, ib = F.inv(alpha), F.inv(beta)
    P, Q = [], []
    for i in range(m):
        P.append([o if j == i else z for j in range(m)] + [z] * m)
        Q.append([z] * m + [F.mul(ib, x) for x in A.data[i]])
    for i in range(m):
        P.append([ia if j == i else z for j in range(m)] + [z] * m)
        Q.append([z] * m + [o if j == i else z for j in range(m)])
    return Matrix._raw(F, P, 2 * m), Matrix._raw(F, Q, 2 * m)


def conjugate(S: Matrix, M: Matrix) -> Matrix:
    """S @ M @ S^-1.

    If the columns of S are new basis vectors in old coordinates and M is an
    operator written in the new basis, the result is the operator in the old one.
    """
    return S @ M @ S.inverse()
