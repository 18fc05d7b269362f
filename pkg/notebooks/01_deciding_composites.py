"""
Which matrices are alpha*P + beta*Q?
====================================

A square matrix A is an (alpha, beta)-composite when A = alpha*P + beta*Q for
two idempotents P and Q.  This script walks through the decision procedure on
small hand-made examples over the rationals and over GF(p).
"""

# %%
from fractions import Fraction

from idempotent_forge import GF, QQ, Matrix, Polynomial, companion, decide, jordan_block, phi
from idempotent_forge.matrix import block_diag

# %% [markdown]
# A diagonal matrix with entries alpha and beta is the simplest composite:
# P and Q are the two coordinate projections.

# %%
A = Matrix(QQ, [[1, 0], [0, 2]])
d = decide(A, 1, 2)
print(d.verdict)
for c in d.checks:
    print(f"  {c.id:24s} passed={c.passed} vacuous={c.vacuous}  {c.detail}")

# %% [markdown]
# A Jordan block at 5 is not: 5 is not one of the special scalars
# {0, alpha, beta, alpha+beta}, so the invariant factor (X-5)^3 must be a
# polynomial in Y = (X-1)(X-2), and a polynomial of odd degree never is.

# %%
d = decide(jordan_block(5, 3, QQ), 1, 2)
print(d.verdict, d.check("invariant_factors_in_Y").detail)

# %% [markdown]
# Jordan blocks at alpha and beta must pair up with sizes differing by at most
# one.  Sweep the split of a size-5 space between J_a(1) and J_b(2).

# %%
for a in range(6):
    b = 5 - a
    blocks = ([jordan_block(1, a, QQ)] if a else []) + ([jordan_block(2, b, QQ)] if b else [])
    print(a, b, decide(block_diag(blocks), 1, 2).verdict)

# %% [markdown]
# Blocks of the form [[alpha I, C], [I, beta I]] are always composites; the
# minimal polynomial of the one built from C(X^2) is Y^2.

# %%
X = Polynomial.x(QQ)
B = phi(1, -1, companion(X**2))
print(B)
print(decide(B, 1, -1).verdict)

# %% [markdown]
# In characteristic 2 with alpha = beta = 1 the condition on invariant factors
# reads "polynomial in X^2".  J_2(1) passes; so does any nilpotent matrix.

# %%
F = GF(2)
print(decide(jordan_block(1, 2, F), 1, 1).verdict)
print(decide(jordan_block(0, 3, F), 1, 1).verdict)
print(decide(Matrix(F, [[0, 1], [1, 1]]), 1, 1).verdict)  # X^2 + X + 1 is not in GF(2)[X^2]

# %% [markdown]
# Scalars can be any nonzero rationals.

# %%
half = Fraction(1, 2)
print(decide(Matrix(QQ, [[half, 0], [0, -3]]), half, -3).verdict)
