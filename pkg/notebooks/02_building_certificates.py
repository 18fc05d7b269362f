"""
Building and checking certificates
==================================

``construct`` returns an explicit pair (P, Q).  Everything is exact, so the
three identities P^2 = P, Q^2 = Q and alpha*P + beta*Q = A are checked with
plain equality.
"""

# %%
import random

from idempotent_forge import GF, QQ, Matrix, Polynomial, companion, construct, jordan_block, verify
from idempotent_forge.composite import checkerboard, commutation_identity_holds
from idempotent_forge.matrix import block_diag, conjugate
from idempotent_forge.oracle import random_composite, random_invertible


def show(A, alpha, beta):
    cert = construct(A, alpha, beta)
    print("P =", cert.P)
    print("Q =", cert.Q)
    print("verified:", verify(A, cert), " commutation identity:", commutation_identity_holds(A, cert))
    return cert


# %% [markdown]
# A nilpotent Jordan block with beta = -alpha uses the checkerboard pair.

# %%
show(jordan_block(0, 2, QQ), 1, -1)
P, Q = checkerboard(5, 2, QQ)
print(((P - Q).scale(2)) == jordan_block(0, 5, QQ), P.is_idempotent(), Q.is_idempotent())

# %% [markdown]
# A matrix with no eigenvalue in {0, alpha, beta, alpha+beta}: the companion
# of Y - 5 with Y = (X-1)(X-2).

# %%
X = Polynomial.x(QQ)
show(companion(X**2 - 3 * X - 3), 1, 2)

# %% [markdown]
# A mixed example: Jordan blocks at alpha, beta, 0 and alpha + beta, plus a
# companion block, hidden behind a change of basis.

# %%
F = GF(7)
A = block_diag(
    [
        jordan_block(2, 2, F),
        jordan_block(3, 3, F),
        jordan_block(0, 1, F),
        jordan_block(5, 1, F),
        companion(Polynomial(F, [1, 2, 1])),  # (X+1)^2, not a special eigenvalue
    ]
)
S = random_invertible(F, A.rows, random.Random(0))
show(conjugate(S, A), 2, 3)

# %% [markdown]
# Round trip on random composites: build alpha*P + beta*Q from random
# idempotents and recover some (possibly different) certificate.

# %%
for seed in range(5):
    A, P, Q = random_composite(QQ, 5, 3, -2, seed)
    cert = construct(A, 3, -2)
    print(seed, verify(A, cert), cert.P == P)
