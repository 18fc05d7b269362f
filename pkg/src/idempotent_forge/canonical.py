"""Similarity invariants of exact matrices.

Two independent routes to the invariant factors live here: the Smith normal
form of ``X*I - A`` over K[X] (:func:`invariant_factors`) and a cyclic
decomposition that also returns the change of basis (:func:`frobenius_form`).
The rest covers Weyr sequences, Jordan chains for eigenvalues in the base
field, and the splitting of a matrix along the scalars {0, alpha, beta, alpha+beta}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import Field
from .matrix import Echelon, Matrix, block_diag, companion
from .poly import Polynomial, divmod_poly, gcd_monic, lcm_monic, strip_roots

__all__ = [
    "WeyrSequence",
    "JordanType",
    "SpectralPart",
    "SpectralSplit",
    "PART_LABELS",
    "apply_poly",
    "vector_annihilator",
    "minimal_polynomial",
    "invariant_factors",
    "frobenius_form",
    "frobenius_decomposition",
    "frobenius_invariant_factors",
    "characteristic_polynomial",
    "weyr_sequence",
    "jordan_type",
    "generalized_eigenspace",
    "restriction",
    "spectral_scalars",
    "spectral_split",
]


@dataclass(frozen=True)
class WeyrSequence:
    """n_1 >= n_2 >= ... with trailing zeros trimmed.  ``seq[k]`` is n_k, 1-based, zero-padded."""

    values: tuple = ()

    def __post_init__(self):
        vals = list(self.values)
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "values", tuple(vals))

    def __getitem__(self, k: int) -> int:
        if k < 1:
            raise IndexError("Weyr sequences are indexed from 1")
        return self.values[k - 1] if k <= len(self.values) else 0

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def conjugate(self) -> tuple:
        """Block sizes, descending."""
        if not self.values:
            return ()
        return tuple(sum(1 for v in self.values if v >= i) for i in range(1, self.values[0] + 1))


@dataclass
class JordanType:
    lam: object
    sizes: tuple
    chains: list = dc_field(default_factory=list)

    def count(self, k: int) -> int:
        """j_k: number of blocks of size exactly k."""
        return sum(1 for s in self.sizes if s == k)


PART_LABELS = ("part_alpha", "part_beta", "part_zero", "part_t", "part_coprime")


@dataclass
class SpectralPart:
    basis: list
    restriction: Matrix

    @property
    def dim(self):
        return len(self.basis)


@dataclass
class SpectralSplit:
    parts: dict
    global_basis: Matrix
    scalars: dict  # label -> field value for the root-labelled parts

    def dims(self):
        return {k: p.dim for k, p in self.parts.items()}


def apply_poly(A: Matrix, f: Polynomial, v):
    """f(A) v without forming f(A)."""
    F = A.field
    acc = tuple(F.zero for _ in v)
    for c in reversed(f.coeffs):
        Av = A.apply(acc)
        acc = tuple(F.add(x, F.mul(c, y)) for x, y in zip(Av, v))
    return acc


def _conductor(A: Matrix, v, base: Echelon):
    """Monic f of least degree with f(A) v in span(base); also the Krylov vectors."""
    F = A.field
    E = base.copy()
    nb = len(E)
    krylov = []
    cur = tuple(v)
    while True:
        coords = E.express(cur)
        if coords is not None:
            c = coords[nb:]
            poly = Polynomial._raw(F, [F.neg(x) for x in c] + [F.one])
            return poly, krylov
        E.add(cur)
        krylov.append(cur)
        cur = A.apply(cur)


def vector_annihilator(A: Matrix, v) -> Polynomial:
    """Minimal polynomial of the vector v under A."""
    return _conductor(A, v, Echelon(A.field, A.rows))[0]


def _unit(F, n, i):
    return tuple(F.one if j == i else F.zero for j in range(n))


def minimal_polynomial(A: Matrix) -> Polynomial:
    """Monic minimal polynomial as the lcm of the annihilators of the standard basis."""
    if not A.is_square:
        raise ValueError("minimal polynomial of a non-square matrix")
    F = A.field
    mu = Polynomial.one(F)
    for i in range(A.rows):
        mu = lcm_monic(mu, vector_annihilator(A, _unit(F, A.rows, i)))
    return mu


def invariant_factors(A: Matrix):
    """Nonconstant monic invariant factors f_1 | f_2 | ... via the Smith form of X*I - A."""
    if not A.is_square:
        raise ValueError("invariant factors of a non-square matrix")
    F = A.field
    n = A.rows
    X = Polynomial.x(F)
    M = [
        [(X if i == j else Polynomial.zero(F)) - Polynomial._raw(F, (A.data[i][j],)) for j in range(n)]
        for i in range(n)
    ]
    diag = []
    for k in range(n):
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if M[i][j] and (best is None or M[i][j].degree < M[best[0]][best[1]].degree):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            M[k], M[i] = M[i], M[k]
            for row in M:
                row[k], row[j] = row[j], row[k]
            piv = M[k][k]
            clean = True
            for i in range(k + 1, n):
                if M[i][k]:
                    q, r = divmod_poly(M[i][k], piv)
                    M[i] = [x - q * y for x, y in zip(M[i], M[k])]
                    clean = clean and not r
            for j in range(k + 1, n):
                if M[k][j]:
                    q, r = divmod_poly(M[k][j], piv)
                    for row in M:
                        row[j] = row[j] - q * row[k]
                    clean = clean and not r
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, n) for j in range(k + 1, n) if divmod_poly(M[i][j], piv)[1]),
                None,
            )
            if bad is None:
                break
            M[k] = [x + y for x, y in zip(M[k], M[bad])]
        if best is None:
            break
        diag.append(M[k][k].monic())
    return [d for d in diag if d.degree >= 1]


def characteristic_polynomial(A: Matrix) -> Polynomial:
    """Product of the invariant factors."""
    out = Polynomial.one(A.field)
    for f in invariant_factors(A):
        out = out * f
    return out


def _coprime_lcm_split(f: Polynomial, g: Polynomial):
    """(a, b) with a | f, b | g, gcd(a, b) = 1 and a*b = lcm(f, g)."""
    a = f
    b = g // gcd_monic(f, g)
    while True:
        h = gcd_monic(a, b)
        if h.degree == 0:
            return a.monic(), b.monic()
        a = a // h
        b = b * h


def _cyclic_decomposition(A: Matrix):
    """List of (invariant factor, Krylov basis), largest factor first.

    Repeatedly take a vector whose conductor into the span built so far is the
    whole quotient's minimal polynomial, correct it so its cyclic subspace meets
    that span trivially, and append its Krylov basis.  Candidates are standard
    basis vectors merged through coprime lcm splitting, so the result is
    deterministic and needs no randomness.
    """
    F = A.field
    n = A.rows
    W = Echelon(F, n)
    gens = []  # (vector, invariant factor, krylov basis)
    while len(W) < n:
        v, f = None, None
        for i in range(n):
            e = _unit(F, n, i)
            g, _ = _conductor(A, e, W)
            if g.degree == 0:
                continue
            if v is None:
                v, f = e, g
                continue
            if not divmod_poly(f, g)[1]:
                continue
            a, b = _coprime_lcm_split(f, g)
            u1 = apply_poly(A, f // a, v)
            u2 = apply_poly(A, g // b, e)
            v = tuple(F.add(x, y) for x, y in zip(u1, u2))
            f = a * b
        if gens:
            coords = W.express(apply_poly(A, f, v))
            off = 0
            for w, _, kry in gens:
                h = Polynomial._raw(F, coords[off : off + len(kry)])
                off += len(kry)
                q, r = divmod_poly(h, f)
                if r:
                    raise ArithmeticError("cyclic decomposition failed: conductor does not divide")
                u = apply_poly(A, q, w)
                v = tuple(F.sub(x, y) for x, y in zip(v, u))
        kry = []
        cur = v
        for _ in range(f.degree):
            if not W.add(cur):
                raise ArithmeticError("cyclic decomposition failed: dependent Krylov vector")
            kry.append(cur)
            cur = A.apply(cur)
        gens.append((v, f, kry))
    return [(f, kry) for _, f, kry in gens]


def frobenius_decomposition(A: Matrix):
    """(F, S, factors): Frobenius form, transform with S F S^-1 = A, invariant factors."""
    if not A.is_square:
        raise ValueError("Frobenius form of a non-square matrix")
    F = A.field
    gens = _cyclic_decomposition(A)[::-1]
    if not gens:
        return Matrix.zeros(F, 0), Matrix.zeros(F, 0), []
    S = Matrix.from_columns(F, [x for _, kry in gens for x in kry])
    Fr = block_diag([companion(f) for f, _ in gens], field=F)
    return Fr, S, [f for f, _ in gens]


def frobenius_form(A: Matrix):
    """Rational canonical form ``F = D(C(f_1), ..., C(f_N))`` and S with S F S^-1 = A.

    Blocks follow the divisibility order f_1 | f_2 | ...; the columns of S are
    the Krylov bases of the cyclic generators.
    """
    Fr, S, _ = frobenius_decomposition(A)
    return Fr, S


def frobenius_invariant_factors(A: Matrix):
    """Invariant factors read off the cyclic decomposition (independent of the Smith route)."""
    return [f for f, _ in _cyclic_decomposition(A)[::-1]]


def weyr_sequence(A: Matrix, lam) -> WeyrSequence:
    """n_k = dim ker (A - lam I)^k - dim ker (A - lam I)^(k-1), until it vanishes."""
    F = A.field
    n = A.rows
    B = A.shift(F.coerce(lam))
    vals = []
    prev = 0
    P = Matrix.identity(F, n)
    while True:
        P = P @ B
        d = n - P.rank()
        if d == prev:
            break
        vals.append(d - prev)
        prev = d
    return WeyrSequence(tuple(vals))


def jordan_type(A: Matrix, lam) -> JordanType:
    """Block sizes and Jordan chains of A for the base-field eigenvalue ``lam``.

    Each chain is ``[c_1, ..., c_k]`` with ``(A - lam) c_1 = 0`` and
    ``(A - lam) c_j = c_{j-1}``.
    """
    F = A.field
    n = A.rows
    lam = F.coerce(lam)
    B = A.shift(lam)
    kernels = [[]]
    P = Matrix.identity(F, n)
    while True:
        P = P @ B
        K = P.kernel_basis()
        if len(K) == len(kernels[-1]):
            break
        kernels.append(K)
    m = len(kernels) - 1
    chains = []  # each stored top-down while being built
    for k in range(m, 0, -1):
        E = Echelon(F, n)
        for v in kernels[k - 1]:
            E.add(v)
        for ch in chains:
            if not E.add(ch[-1]):
                raise ArithmeticError("Jordan chain vectors became dependent")
        for v in kernels[k]:
            if E.add(v):
                chains.append([v])
        if k > 1:
            for ch in chains:
                ch.append(B.apply(ch[-1]))
    chains = [list(reversed(ch)) for ch in chains]
    chains.sort(key=len, reverse=True)
    sizes = tuple(len(ch) for ch in chains)
    return JordanType(lam, sizes, chains)


def generalized_eigenspace(A: Matrix, lam):
    """Basis of ker (A - lam I)^n."""
    return (A.shift(A.field.coerce(lam)) ** A.rows).kernel_basis()


def restriction(A: Matrix, basis) -> Matrix:
    """Matrix R with A B = B R for the columns B of an A-invariant basis."""
    F = A.field
    E = Echelon(F, A.rows)
    for b in basis:
        if not E.add(b):
            raise ValueError("basis vectors are dependent")
    cols = []
    for b in basis:
        c = E.express(A.apply(b))
        if c is None:
            raise ValueError("subspace is not invariant")
        cols.append(tuple(c))
    if not cols:
        return Matrix.zeros(F, 0)
    return Matrix.from_columns(F, cols)


def spectral_scalars(field: Field, alpha, beta) -> dict:
    """Label -> scalar for the distinct elements of {alpha, beta, 0, alpha+beta}.

    Coinciding scalars keep only the first label in the order alpha, beta,
    zero, t (so alpha = beta drops part_beta and alpha + beta = 0 drops part_t).
    """
    alpha, beta = field.coerce(alpha), field.coerce(beta)
    out = {}
    for label, s in (
        ("part_alpha", alpha),
        ("part_beta", beta),
        ("part_zero", field.zero),
        ("part_t", field.add(alpha, beta)),
    ):
        if s not in out.values():
            out[label] = s
    return out


def spectral_split(A: Matrix, alpha, beta) -> SpectralSplit:
    """Direct-sum decomposition of A along generalized eigenspaces of the special scalars."""
    F = A.field
    alpha, beta = F.coerce(alpha), F.coerce(beta)
    if not alpha or not beta:
        raise ValueError("alpha and beta must be nonzero")
    if not A.is_square:
        raise ValueError("spectral split of a non-square matrix")
    scalars = spectral_scalars(F, alpha, beta)
    parts = {}
    for label, s in scalars.items():
        basis = generalized_eigenspace(A, s)
        parts[label] = SpectralPart(basis, restriction(A, basis))
    mu = minimal_polynomial(A) if A.rows else Polynomial.one(F)
    q, _ = strip_roots(mu, scalars.values())
    basis = A.poly_eval(q).kernel_basis()
    parts["part_coprime"] = SpectralPart(basis, restriction(A, basis))
    cols = [v for p in parts.values() for v in p.basis]
    G = Matrix.from_columns(F, cols) if cols else Matrix.zeros(F, 0)
    return SpectralSplit(parts, G, scalars)
