"""Decide, construct and verify (alpha, beta)-composites A = alpha*P + beta*Q.

The decision criterion is one procedure for every (alpha, beta) and every
characteristic:

(a) if alpha != beta, the Weyr sequences of A at alpha and at beta intertwine;
(b) if alpha + beta != 0, the Weyr sequences at 0 and at alpha + beta intertwine;
(c) every invariant factor, stripped of its roots in {0, alpha, beta, alpha+beta},
    is a polynomial in Y = (X - alpha)(X - beta).

Construction splits A along those scalars and builds each piece separately:
the part with no special eigenvalue through companion blocks of the form
[[alpha I, C], [I, beta I]], the {alpha, beta} part by pairing Jordan blocks,
the {0, alpha+beta} part by shifting into the {alpha, beta} case, and
nilpotent pieces through an explicit checkerboard pair of idempotents.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .canonical import (
    frobenius_decomposition,
    frobenius_form,
    invariant_factors,
    jordan_type,
    minimal_polynomial,
    spectral_scalars,
    spectral_split,
    weyr_sequence,
)
from .fields import Field, FieldMismatch
from .matrix import Matrix, block_diag, companion, conjugate, jordan_block, phi, phi_idempotents
from .poly import Polynomial, is_poly_in_Y, strip_roots

__all__ = [
    "Check",
    "Decision",
    "Certificate",
    "NotComposite",
    "PreconditionError",
    "InternalInconsistency",
    "CONDITION_IDS",
    "intertwined",
    "decide",
    "construct",
    "verify",
    "verify_report",
    "commutation_identity_holds",
    "complementary",
    "checkerboard",
    "build_coprime_part",
    "build_pair_equal",
    "build_pair_offset",
    "build_nilpotent_diff",
    "build_shifted",
]

log = logging.getLogger(__name__)

CONDITION_IDS = ("intertwine_alpha_beta", "intertwine_zero_t", "invariant_factors_in_Y")


class PreconditionError(ValueError):
    """A builder was called on input outside its contract."""


class NotComposite(ValueError):
    """The matrix fails the criterion; ``decision`` says which condition broke."""

    def __init__(self, decision: "Decision"):
        failed = [c.id for c in decision.checks if not c.passed]
        super().__init__(f"not an (alpha, beta)-composite: failed {', '.join(failed)}")
        self.decision = decision


class InternalInconsistency(RuntimeError):
    """A builder produced something that does not verify.  Should never happen."""


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    vacuous: bool = False
    detail: str = ""

    def to_json(self):
        return {"id": self.id, "passed": self.passed, "vacuous": self.vacuous, "detail": self.detail}


@dataclass(frozen=True)
class Decision:
    verdict: bool
    checks: tuple = ()

    def __bool__(self):
        return self.verdict

    def check(self, cid: str) -> Check:
        return next(c for c in self.checks if c.id == cid)

    def to_json(self):
        return {"verdict": self.verdict, "checks": [c.to_json() for c in self.checks]}


@dataclass(frozen=True)
class Certificate:
    P: Matrix
    Q: Matrix
    alpha: object
    beta: object

    @property
    def field(self) -> Field:
        return self.P.field

    def matrix(self) -> Matrix:
        """alpha*P + beta*Q."""
        return self.P.scale(self.alpha) + self.Q.scale(self.beta)


def intertwined(u, v) -> bool:
    """u_{k+1} <= v_k and v_{k+1} <= u_k for every k >= 1 (zero-padded)."""
    u, v = tuple(u), tuple(v)
    top = max(len(u), len(v)) + 1

    def at(s, k):
        return s[k - 1] if k <= len(s) else 0

    return all(at(u, k + 1) <= at(v, k) and at(v, k + 1) <= at(u, k) for k in range(1, top + 1))


def _scalars(A: Matrix, alpha, beta):
    if not isinstance(A, Matrix):
        raise TypeError("expected a Matrix")
    if not A.is_square:
        raise ValueError(f"matrix is {A.rows}x{A.cols}, not square")
    F = A.field
    alpha, beta = F.coerce(alpha), F.coerce(beta)
    if not alpha or not beta:
        raise ValueError("alpha and beta must be nonzero")
    return F, alpha, beta


def decide(A: Matrix, alpha, beta) -> Decision:
    """Whether A = alpha*P + beta*Q for some idempotents P, Q."""
    F, alpha, beta = _scalars(A, alpha, beta)
    t = F.add(alpha, beta)
    checks = []

    if alpha == beta:
        checks.append(Check("intertwine_alpha_beta", True, True, "alpha = beta"))
    else:
        u, v = weyr_sequence(A, alpha), weyr_sequence(A, beta)
        ok = intertwined(u, v)
        checks.append(
            Check("intertwine_alpha_beta", ok, False, f"weyr(alpha)={list(u)} weyr(beta)={list(v)}")
        )

    if not t:
        checks.append(Check("intertwine_zero_t", True, True, "alpha + beta = 0"))
    else:
        u, v = weyr_sequence(A, F.zero), weyr_sequence(A, t)
        ok = intertwined(u, v)
        checks.append(Check("intertwine_zero_t", ok, False, f"weyr(0)={list(u)} weyr(t)={list(v)}"))

    special = list(spectral_scalars(F, alpha, beta).values())
    bad = []
    for f in invariant_factors(A) if A.rows else []:
        stripped, _ = strip_roots(f, special)
        if not is_poly_in_Y(stripped, alpha, beta)[0]:
            bad.append(str(stripped))
    detail = "all stripped invariant factors lie in K[Y]" if not bad else "not in K[Y]: " + "; ".join(bad)
    checks.append(Check("invariant_factors_in_Y", not bad, False, detail))

    verdict = all(c.passed for c in checks)
    return Decision(verdict, tuple(checks))


def verify_report(A: Matrix, cert: Certificate) -> dict:
    """Which of P^2 = P, Q^2 = Q, alpha*P + beta*Q = A hold."""
    for M in (cert.P, cert.Q):
        if M.field != A.field:
            raise FieldMismatch(f"{M.field!r} vs {A.field!r}")
        if M.shape != A.shape:
            raise ValueError(f"certificate shape {M.shape} does not match {A.shape}")
    return {
        "P_idempotent": cert.P.is_idempotent(),
        "Q_idempotent": cert.Q.is_idempotent(),
        "sum_matches": cert.matrix() == A,
    }


def verify(A: Matrix, cert: Certificate) -> bool:
    return all(verify_report(A, cert).values())


def commutation_identity_holds(A: Matrix, cert: Certificate) -> bool:
    """(A - alpha)(A - beta) = alpha*beta*(I - (P - Q)^2), and P, Q commute with it."""
    F = A.field
    n = A.rows
    V = A.shift(cert.alpha) @ A.shift(cert.beta)
    D = cert.P - cert.Q
    rhs = (Matrix.identity(F, n) - D @ D).scale(F.mul(cert.alpha, cert.beta))
    return V == rhs and cert.P @ V == V @ cert.P and cert.Q @ V == V @ cert.Q


def complementary(P: Matrix, Q: Matrix) -> bool:
    """im P and ker Q are complementary subspaces."""
    im = P.transpose().rref()[0]
    im_basis = [r for r in im.data if any(r)]
    ker = Q.kernel_basis()
    if len(im_basis) + len(ker) != P.rows:
        return False
    return Matrix.from_columns(P.field, im_basis + ker).rank() == P.rows if P.rows else True


def _check_local(M: Matrix, P: Matrix, Q: Matrix, alpha, beta, where: str):
    cert = Certificate(P, Q, alpha, beta)
    if not verify(M, cert):
        raise InternalInconsistency(f"{where}: built pair does not verify")
    return cert


def _field_of(field, *xs):
    if field is not None:
        return field
    for x in xs:
        if hasattr(x, "field"):
            return x.field
    raise TypeError("cannot infer the field; pass field=")


# builders


def checkerboard(k: int, alpha, field: Field):
    """Idempotents (P, Q) of size k with alpha*(P - Q) = J_k(0).

    P = D + S and Q = D + T with D = diag(1, 0, 1, ...), S carrying 1/alpha on
    the superdiagonal in rows 1, 3, 5, ... and T carrying -1/alpha in rows
    2, 4, ... (1-based).
    """
    F = field
    alpha = F.coerce(alpha)
    ia = F.inv(alpha)
    P = [[F.zero] * k for _ in range(k)]
    Q = [[F.zero] * k for _ in range(k)]
    for i in range(k):
        if i % 2 == 0:
            P[i][i] = Q[i][i] = F.one
        if i + 1 < k:
            if i % 2 == 0:
                P[i][i + 1] = ia
            else:
                Q[i][i + 1] = F.neg(ia)
    return Matrix._raw(F, P, k), Matrix._raw(F, Q, k)


def _chain_basis(F, chains, n):
    cols = [v for ch in chains for v in ch]
    return Matrix.from_columns(F, cols) if cols else Matrix.zeros(F, n)


def build_nilpotent_diff(N: Matrix, alpha) -> Certificate:
    """Certificate for N with coefficients (alpha, -alpha); N must be nilpotent."""
    F = N.field
    alpha = F.coerce(alpha)
    if not alpha:
        raise PreconditionError("alpha must be nonzero")
    n = N.rows
    if n == 0:
        Z = Matrix.zeros(F, 0)
        return Certificate(Z, Z, alpha, F.neg(alpha))
    if not (N ** n).is_zero():
        raise PreconditionError("matrix is not nilpotent")
    jt = jordan_type(N, F.zero)
    Ps, Qs = [], []
    for ch in jt.chains:
        P, Q = checkerboard(len(ch), alpha, F)
        Ps.append(P)
        Qs.append(Q)
    T = _chain_basis(F, jt.chains, n)
    P = conjugate(T, block_diag(Ps, field=F))
    Q = conjugate(T, block_diag(Qs, field=F))
    return _check_local(N, P, Q, alpha, F.neg(alpha), "nilpotent part")


def build_coprime_part(A_F: Matrix, alpha, beta) -> Certificate:
    """Certificate for a matrix with no eigenvalue in {0, alpha, beta, alpha+beta}.

    Each invariant factor f = g(Y) has C(f) similar to phi(alpha, beta, C(g)),
    whose explicit idempotents are pulled back through the two Frobenius
    transforms.  The result also has im P and ker Q complementary.
    """
    F, alpha, beta = _scalars(A_F, alpha, beta)
    n = A_F.rows
    if n == 0:
        Z = Matrix.zeros(F, 0)
        return Certificate(Z, Z, alpha, beta)
    special = spectral_scalars(F, alpha, beta).values()
    mu = minimal_polynomial(A_F)
    for s in special:
        if not mu.eval(s):
            raise PreconditionError(f"eigenvalue {F.render(s)} lies in {{0, alpha, beta, alpha+beta}}")
    Fr, S, factors = frobenius_decomposition(A_F)
    Ps, Qs = [], []
    for f in factors:
        yes, g = is_poly_in_Y(f, alpha, beta)
        if not yes:
            raise PreconditionError(f"invariant factor {f} is not a polynomial in (X-alpha)(X-beta)")
        Cg = companion(g)
        Phi = phi(alpha, beta, Cg)
        Ph, Qh = phi_idempotents(alpha, beta, Cg)
        Cf, S2 = frobenius_form(Phi)
        if Cf != companion(f):
            raise InternalInconsistency("phi block is not similar to the companion of f")
        # Phi = S2 Cf S2^-1, so Cf = S2^-1 Phi S2
        S2i = S2.inverse()
        Ps.append(S2i @ Ph @ S2)
        Qs.append(S2i @ Qh @ S2)
    P = conjugate(S, block_diag(Ps, field=F))
    Q = conjugate(S, block_diag(Qs, field=F))
    cert = _check_local(A_F, P, Q, alpha, beta, "coprime part")
    if not complementary(P, Q):
        raise InternalInconsistency("coprime part: im P and ker Q are not complementary")
    return cert


def build_pair_equal(n: int, alpha, beta, field: Field | None = None) -> Certificate:
    """Certificate on D(J_n(alpha), J_n(beta)) with im P and ker Q complementary.

    The block sum is cyclic with minimal polynomial Y^n, the same as
    phi(alpha, beta, C(X^n)); the explicit idempotents of the latter are
    transported along the two cyclic bases.
    """
    F = _field_of(field, alpha, beta)
    alpha, beta = F.coerce(alpha), F.coerce(beta)
    if alpha == beta:
        raise PreconditionError("build_pair_equal needs alpha != beta")
    if n < 1:
        raise PreconditionError("block size must be positive")
    J = block_diag([jordan_block(alpha, n, F), jordan_block(beta, n, F)], field=F)
    Cx = companion(Polynomial.x(F) ** n)
    Phi = phi(alpha, beta, Cx)
    Ph, Qh = phi_idempotents(alpha, beta, Cx)
    C1, S1 = frobenius_form(Phi)
    C2, S2 = frobenius_form(J)
    if C1 != C2:
        raise InternalInconsistency("Jordan pair and phi block have different Frobenius forms")
    T = S2 @ S1.inverse()
    Ti = T.inverse()
    P, Q = T @ Ph @ Ti, T @ Qh @ Ti
    cert = _check_local(J, P, Q, alpha, beta, "equal pair")
    if not complementary(P, Q):
        raise InternalInconsistency("equal pair: im P and ker Q are not complementary")
    return cert


def _scalar_witness(which: str, alpha, beta, F: Field) -> Certificate:
    one, zero = Matrix.identity(F, 1), Matrix.zeros(F, 1)
    if which == "alpha":
        return Certificate(one, zero, alpha, beta)
    return Certificate(zero, one, alpha, beta)


def build_pair_offset(a: int, which_bigger: str, alpha, beta, field: Field | None = None) -> Certificate:
    """Certificate on D(J_a(alpha), J_{a+1}(beta)) (``which_bigger="beta"``)
    or D(J_{a+1}(alpha), J_a(beta)) (``which_bigger="alpha"``)."""
    F = _field_of(field, alpha, beta)
    alpha, beta = F.coerce(alpha), F.coerce(beta)
    if alpha == beta:
        raise PreconditionError("build_pair_offset needs alpha != beta")
    if a < 0:
        raise PreconditionError("negative block size")
    if which_bigger == "alpha":
        swapped = build_pair_offset(a, "beta", beta, alpha, F)
        m = 2 * a + 1
        # target order: J_{a+1}(alpha) then J_a(beta); swapped order: J_a(beta) then J_{a+1}(alpha)
        perm = list(range(a, m)) + list(range(a))
        Pi = Matrix._raw(F, [[F.one if perm[j] == i else F.zero for j in range(m)] for i in range(m)], m)
        # new basis vector j is old basis vector perm[j]
        Pt = Pi.inverse()
        P = Pt @ swapped.Q @ Pi
        Q = Pt @ swapped.P @ Pi
        J = block_diag([jordan_block(alpha, a + 1, F), jordan_block(beta, a, F)] if a else [jordan_block(alpha, 1, F)], field=F)
        return _check_local(J, P, Q, alpha, beta, "offset pair (alpha bigger)")
    if which_bigger != "beta":
        raise ValueError("which_bigger must be 'alpha' or 'beta'")
    if a == 0:
        return _scalar_witness("beta", alpha, beta, F)
    base = build_pair_equal(a, alpha, beta, F)
    P, Q = base.P, base.Q
    m = 2 * a
    C = tuple(F.one if i == m - 1 else F.zero for i in range(m))
    im = [r for r in P.transpose().rref()[0].data if any(r)]
    ker = Q.kernel_basis()
    U = Matrix.from_columns(F, im + ker)
    z = U.solve(C)
    if z is None:
        raise InternalInconsistency("offset pair: C not reachable from im P + ker Q")
    k = len(im)
    c_im = Matrix.from_columns(F, im).apply(z[:k]) if im else (F.zero,) * m
    c_ker = Matrix.from_columns(F, ker).apply(z[k:]) if ker else (F.zero,) * m
    C1 = [F.div(x, alpha) for x in c_im]
    C2 = [F.div(x, beta) for x in c_ker]
    P1 = [list(r) + [c] for r, c in zip(P.data, C1)] + [[F.zero] * (m + 1)]
    Q1 = [list(r) + [c] for r, c in zip(Q.data, C2)] + [[F.zero] * m + [F.one]]
    J = block_diag([jordan_block(alpha, a, F), jordan_block(beta, a + 1, F)], field=F)
    return _check_local(J, Matrix._raw(F, P1, m + 1), Matrix._raw(F, Q1, m + 1), alpha, beta, "offset pair")


def _build_two_eigen(R: Matrix, alpha, beta) -> Certificate:
    """R has all eigenvalues in {alpha, beta}, alpha != beta: pair Jordan blocks index-wise."""
    F = R.field
    n = R.rows
    if n == 0:
        Z = Matrix.zeros(F, 0)
        return Certificate(Z, Z, alpha, beta)
    if not intertwined(weyr_sequence(R, alpha), weyr_sequence(R, beta)):
        raise PreconditionError("Weyr sequences at alpha and beta are not intertwined")
    ja, jb = jordan_type(R, alpha), jordan_type(R, beta)
    if sum(ja.sizes) + sum(jb.sizes) != n:
        raise PreconditionError("eigenvalues outside {alpha, beta}")
    Ps, Qs, chains = [], [], []
    for k in range(max(len(ja.chains), len(jb.chains))):
        ca = ja.chains[k] if k < len(ja.chains) else []
        cb = jb.chains[k] if k < len(jb.chains) else []
        la, lb = len(ca), len(cb)
        if abs(la - lb) > 1 or (min(la, lb) == 0 and max(la, lb) > 1):
            raise InternalInconsistency(f"unpairable Jordan blocks of sizes {la} and {lb}")
        if la == lb == 1:
            # two eigenvectors: the coordinate projections already work
            cert = Certificate(
                block_diag([Matrix.identity(F, 1), Matrix.zeros(F, 1)]),
                block_diag([Matrix.zeros(F, 1), Matrix.identity(F, 1)]),
                alpha,
                beta,
            )
        elif la == lb:
            cert = build_pair_equal(la, alpha, beta, F)
        elif lb == la + 1:
            cert = build_pair_offset(la, "beta", alpha, beta, F)
        else:
            cert = build_pair_offset(lb, "alpha", alpha, beta, F)
        Ps.append(cert.P)
        Qs.append(cert.Q)
        chains.extend([ca, cb])
    T = _chain_basis(F, chains, n)
    P = conjugate(T, block_diag(Ps, field=F))
    Q = conjugate(T, block_diag(Qs, field=F))
    return _check_local(R, P, Q, alpha, beta, "{alpha, beta} part")


def build_shifted(M0: Matrix, alpha, beta) -> Certificate:
    """Certificate for M0 with all eigenvalues in {0, alpha+beta}, alpha+beta != 0.

    M0 - alpha*I has eigenvalues in {-alpha, beta}; write it as
    -alpha*P' + beta*Q' and return (I - P', Q').
    """
    F, alpha, beta = _scalars(M0, alpha, beta)
    t = F.add(alpha, beta)
    if not t:
        raise PreconditionError("alpha + beta must be nonzero")
    n = M0.rows
    if n == 0:
        Z = Matrix.zeros(F, 0)
        return Certificate(Z, Z, alpha, beta)
    if not intertwined(weyr_sequence(M0, F.zero), weyr_sequence(M0, t)):
        raise PreconditionError("Weyr sequences at 0 and alpha+beta are not intertwined")
    rest, _ = strip_roots(minimal_polynomial(M0), [F.zero, t])
    if rest.degree:
        raise PreconditionError("eigenvalues outside {0, alpha+beta}")
    inner = _build_two_eigen(M0.shift(alpha), F.neg(alpha), beta)
    P = Matrix.identity(F, n) - inner.P
    return _check_local(M0, P, inner.Q, alpha, beta, "shifted part")


def _build_alpha_equal(R: Matrix, alpha) -> Certificate:
    """R = alpha*I + N with N nilpotent; coefficients (alpha, alpha)."""
    F = R.field
    n = R.rows
    N = R.shift(alpha)
    inner = build_nilpotent_diff(N, alpha)
    Q = Matrix.identity(F, n) - inner.Q
    return _check_local(R, inner.P, Q, alpha, alpha, "alpha = beta part")


def construct(A: Matrix, alpha, beta) -> Certificate:
    """Exact certificate (P, Q) with A = alpha*P + beta*Q; raises NotComposite otherwise."""
    F, alpha, beta = _scalars(A, alpha, beta)
    decision = decide(A, alpha, beta)
    if not decision.verdict:
        raise NotComposite(decision)
    n = A.rows
    if n == 0:
        Z = Matrix.zeros(F, 0)
        return Certificate(Z, Z, alpha, beta)
    t = F.add(alpha, beta)
    split = spectral_split(A, alpha, beta)
    parts = split.parts

    def joined(*labels):
        return block_diag([parts[k].restriction for k in labels if k in parts], field=F)

    # groups are contiguous in the global basis: alpha, beta, zero, t, coprime
    pieces = []
    try:
        R = joined("part_alpha", "part_beta")
        if alpha == beta:
            pieces.append(_build_alpha_equal(R, alpha))
        else:
            pieces.append(_build_two_eigen(R, alpha, beta))
        R = joined("part_zero", "part_t")
        if t:
            pieces.append(build_shifted(R, alpha, beta))
        else:
            cert = build_nilpotent_diff(R, alpha)
            pieces.append(Certificate(cert.P, cert.Q, alpha, beta))
        pieces.append(build_coprime_part(parts["part_coprime"].restriction, alpha, beta))
    except PreconditionError as exc:
        raise InternalInconsistency(f"criterion accepted but a builder refused: {exc}") from exc
    log.debug("part sizes %s", split.dims())

    P = conjugate(split.global_basis, block_diag([c.P for c in pieces], field=F))
    Q = conjugate(split.global_basis, block_diag([c.Q for c in pieces], field=F))
    cert = Certificate(P, Q, alpha, beta)
    if not verify(A, cert):
        raise InternalInconsistency("assembled certificate does not verify")
    return cert
