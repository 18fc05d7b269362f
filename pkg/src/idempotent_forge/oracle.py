"""Ground truth for tiny prime fields, and seeded generators of composites.

The exhaustive oracle knows nothing about invariant factors or Jordan chains:
it lists every matrix, keeps the idempotent ones, and tests whether
``Q = (A - alpha*P) / beta`` is idempotent for some listed P.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fields import Field
from .matrix import Matrix

__all__ = [
    "BudgetExceeded",
    "OracleBudget",
    "EXHAUSTIVE_LIMIT",
    "enumerate_idempotents",
    "brute_force_decide",
    "brute_force_witness",
    "all_matrices",
    "random_matrix",
    "random_invertible",
    "random_composite",
]

EXHAUSTIVE_LIMIT = 2**32
_CHUNK = 1 << 16


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_dim: int
    field: Field
    mode: str = "exhaustive"
    seed: int = 0
    samples: int = 100

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown oracle mode {self.mode!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.mode == "exhaustive":
            _guard(self.field, self.max_dim)


def _guard(field: Field, n: int):
    if field.p is None:
        raise BudgetExceeded("exhaustive enumeration needs a finite field")
    if field.p ** (n * n) > EXHAUSTIVE_LIMIT:
        raise BudgetExceeded(f"{field.p}^{n * n} matrices exceeds the budget of 2^32")


def _digits(start, stop, p, n):
    """Matrices number start..stop-1 as an int64 array of shape (k, n, n)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), n * n), dtype=np.int64)
    for j in range(n * n):
        out[:, j] = idx % p
        idx //= p
    return out.reshape(-1, n, n)


@lru_cache(maxsize=None)
def _idempotent_array(p: int, n: int) -> np.ndarray:
    total = p ** (n * n)
    found = []
    for start in range(0, total, _CHUNK):
        M = _digits(start, min(total, start + _CHUNK), p, n)
        sq = np.matmul(M, M) % p
        keep = np.all(sq == M, axis=(1, 2))
        found.append(M[keep])
    return np.concatenate(found) if found else np.empty((0, n, n), dtype=np.int64)


def enumerate_idempotents(field: Field, n: int):
    """Yield every n x n idempotent over GF(p), each exactly once."""
    _guard(field, n)
    for M in _idempotent_array(field.p, n):
        yield Matrix._raw(field, M.tolist(), n)


def all_matrices(field: Field, n: int):
    """Every n x n matrix over GF(p), in counting order."""
    _guard(field, n)
    total = field.p ** (n * n)
    for start in range(0, total, _CHUNK):
        for M in _digits(start, min(total, start + _CHUNK), field.p, n):
            yield Matrix._raw(field, M.tolist(), n)


def _witness_index(A: Matrix, alpha, beta):
    F = A.field
    _guard(F, A.rows)
    if not A.is_square:
        raise ValueError("matrix is not square")
    p, n = F.p, A.rows
    alpha, beta = F.coerce(alpha), F.coerce(beta)
    if not alpha or not beta:
        raise ValueError("alpha and beta must be nonzero")
    Ps = _idempotent_array(p, n)
    a = np.array(A.tolist(), dtype=np.int64).reshape(1, n, n)
    Qs = (a - alpha * Ps) * pow(beta, -1, p) % p
    ok = np.all(np.matmul(Qs, Qs) % p == Qs, axis=(1, 2))
    hits = np.flatnonzero(ok)
    if not len(hits):
        return None
    i = int(hits[0])
    return Ps[i], Qs[i]


def brute_force_decide(A: Matrix, alpha, beta) -> bool:
    """True iff some idempotent P makes (A - alpha*P)/beta idempotent."""
    return _witness_index(A, alpha, beta) is not None


def brute_force_witness(A: Matrix, alpha, beta):
    """First (P, Q) found by the exhaustive search, or None."""
    hit = _witness_index(A, alpha, beta)
    if hit is None:
        return None
    n = A.rows
    return Matrix._raw(A.field, hit[0].tolist(), n), Matrix._raw(A.field, hit[1].tolist(), n)


def random_matrix(field: Field, n: int, rng: random.Random, bound: int = 3) -> Matrix:
    return Matrix._raw(field, [[field.random_element(rng, bound) for _ in range(n)] for _ in range(n)], n)


def random_invertible(field: Field, n: int, rng: random.Random, bound: int = 3) -> Matrix:
    while True:
        S = random_matrix(field, n, rng, bound)
        if S.rank() == n:
            return S


def _projector(field, n, r, rng):
    S = random_invertible(field, n, rng, bound=2)
    D = Matrix._raw(field, [[field.one if i == j and i < r else field.zero for j in range(n)] for i in range(n)], n)
    return S @ D @ S.inverse()


def random_composite(field: Field, n: int, alpha, beta, seed: int, ranks=None):
    """(A, P, Q) with P, Q random idempotents of random rank and A = alpha*P + beta*Q.

    Uses :class:`random.Random` (Mersenne Twister) seeded with ``seed``, so the
    output is a pure function of the arguments.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    if ranks is None:
        ranks = (rng.randint(0, n), rng.randint(0, n))
    P = _projector(field, n, ranks[0], rng)
    Q = _projector(field, n, ranks[1], rng)
    A = P.scale(alpha) + Q.scale(beta)
    return A, P, Q
