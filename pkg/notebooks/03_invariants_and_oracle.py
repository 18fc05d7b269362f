"""
Similarity invariants and the brute-force oracle
================================================

The criterion is built on invariant factors and Weyr sequences.  Over tiny
prime fields it can be compared with an exhaustive search over all
idempotents.
"""

# %%
import time

from idempotent_forge import GF, QQ, Matrix, decide, frobenius_form, invariant_factors, weyr_sequence
from idempotent_forge.canonical import frobenius_invariant_factors, jordan_type, spectral_split
from idempotent_forge.matrix import conjugate
from idempotent_forge.oracle import all_matrices, brute_force_decide, enumerate_idempotents

# %% [markdown]
# Two independent routes to the invariant factors: Smith form of XI - A and a
# cyclic decomposition.  The second also yields the change of basis.

# %%
A = Matrix(QQ, [[2, 1, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [1, 0, 0, 3]])
print([str(f) for f in invariant_factors(A)])
print([str(f) for f in frobenius_invariant_factors(A)])
Fr, S = frobenius_form(A)
print(Fr)
print(conjugate(S, Fr) == A)

# %%
print(list(weyr_sequence(A, 2)), jordan_type(A, 2).sizes)
print(spectral_split(A, 1, 2).dims())

# %% [markdown]
# Idempotent counts: 2 + p^2 + p for 2x2 matrices over GF(p).

# %%
for p in (2, 3, 5):
    print(p, len(list(enumerate_idempotents(GF(p), 2))), 2 + p * p + p)

# %% [markdown]
# Exhaustive agreement between the criterion and the search.

# %%
t0 = time.perf_counter()
for p, n in ((2, 3), (3, 2)):
    F = GF(p)
    pairs = [(a, b) for a in range(1, p) for b in range(1, p)]
    agree = total = 0
    for M in all_matrices(F, n):
        for a, b in pairs:
            total += 1
            agree += decide(M, a, b).verdict == brute_force_decide(M, a, b)
    print(f"GF({p}) n={n}: {agree}/{total} agree")
print(f"{time.perf_counter() - t0:.1f}s")
