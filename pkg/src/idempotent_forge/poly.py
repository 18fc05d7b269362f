"""Dense univariate polynomials over a :class:`~idempotent_forge.fields.Field`.

Coefficients are stored low degree first; the zero polynomial has no
coefficients.  Besides ring arithmetic this module carries the pieces the
decision procedure needs: root stripping by repeated exact division and the
decomposition ``f = f1(Y) + (X - alpha) f2(Y)`` with ``Y = (X - alpha)(X - beta)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .fields import Field, FieldMismatch, Scalar

__all__ = [
    "Polynomial",
    "divmod_poly",
    "gcd_monic",
    "lcm_monic",
    "root_multiplicity",
    "strip_roots",
    "y_poly",
    "y_decompose",
    "is_poly_in_Y",
    "compose_in_Y",
    "parse_poly",
]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True, init=False)
class Polynomial:
    field: Field
    coeffs: tuple

    def __init__(self, field: Field, coeffs=()):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", _trim(field.coerce(c) for c in coeffs))

    @classmethod
    def _raw(cls, field, coeffs):
        # coeffs already canonical
        p = object.__new__(cls)
        object.__setattr__(p, "field", field)
        object.__setattr__(p, "coeffs", _trim(coeffs))
        return p

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (field.one,))

    @classmethod
    def x(cls, field):
        return cls._raw(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c):
        return cls._raw(field, (field.coerce(c),))

    @classmethod
    def linear_root(cls, field, s):
        """The monic polynomial X - s."""
        return cls._raw(field, (field.neg(field.coerce(s)), field.one))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, Scalar) or isinstance(other, int):
            return Polynomial.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Polynomial._raw(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial._raw(F, [F.norm(c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = Polynomial.one(self.field), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return divmod_poly(self, other)

    def __floordiv__(self, other):
        return divmod_poly(self, other)[0]

    def __mod__(self, other):
        return divmod_poly(self, other)[1]

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        return Polynomial._raw(F, [F.mul(c, x) for x in self.coeffs])

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.lead))

    def __call__(self, s):
        return self.eval(s)

    def eval(self, s):
        """Horner evaluation at a field element; returns a raw field value."""
        F = self.field
        s = F.coerce(s)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, s), c)
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(F.render(c))
            elif k == 1:
                terms.append(f"{F.render(c)}*X")
            else:
                terms.append(f"{F.render(c)}*X^{k}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Polynomial({self}, {self.field!r})"


_TERM_RE = re.compile(r"^([+-]?\d+(?:/\d+)?)(?:\*X(?:\^(\d+))?)?$")


def parse_poly(text: str, field: Field) -> Polynomial:
    """Inverse of ``str(Polynomial)``: terms ``c*X^k`` joined by ``" + "``."""
    text = text.strip()
    if text == "0":
        return Polynomial.zero(field)
    coeffs: dict[int, object] = {}
    for term in text.split(" + "):
        m = _TERM_RE.match(term.strip())
        if m is None:
            raise ValueError(f"malformed term {term!r}")
        if "X" in term:
            k = int(m.group(2)) if m.group(2) else 1
        else:
            k = 0
        coeffs[k] = field.add(coeffs.get(k, field.zero), field.coerce(m.group(1)))
    top = max(coeffs)
    return Polynomial._raw(field, [coeffs.get(i, field.zero) for i in range(top + 1)])


def divmod_poly(f: Polynomial, g: Polynomial):
    """Euclidean division: ``f = q*g + r`` with ``deg r < deg g``."""
    if f.field != g.field:
        raise FieldMismatch(f"{f.field!r} vs {g.field!r}")
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    F = f.field
    r = list(f.coeffs)
    dg = g.degree
    if len(r) <= dg:
        return Polynomial.zero(F), f
    inv_lead = F.inv(g.lead)
    q = [F.zero] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = F.mul(r[k + dg], inv_lead)
        q[k] = c
        if c:
            for j, gj in enumerate(g.coeffs):
                r[k + j] = F.sub(r[k + j], F.mul(c, gj))
    return Polynomial._raw(F, q), Polynomial._raw(F, r[:dg])


def gcd_monic(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd by Euclid's algorithm."""
    if not f and not g:
        raise ValueError("gcd(0, 0) is undefined")
    while g:
        f, g = g, divmod_poly(f, g)[1]
    return f.monic()


def lcm_monic(f: Polynomial, g: Polynomial) -> Polynomial:
    if not f or not g:
        raise ValueError("lcm with zero")
    return (f * g // gcd_monic(f, g)).monic()


def root_multiplicity(f: Polynomial, s):
    """Return ``(m, cofactor)`` with ``f = (X - s)^m * cofactor`` and ``cofactor(s) != 0``.

    Uses repeated exact division by X - s rather than derivatives, which
    misbehave in positive characteristic.
    """
    if not f:
        raise ValueError("root multiplicity of the zero polynomial")
    lin = Polynomial.linear_root(f.field, s)
    m = 0
    while True:
        q, r = divmod_poly(f, lin)
        if r:
            return m, f
        f, m = q, m + 1


def strip_roots(f: Polynomial, roots):
    """Remove every linear factor X - s, s in ``roots``; return ``(stripped, mults)``."""
    if not f:
        raise ValueError("cannot strip roots of the zero polynomial")
    mults = {}
    for s in roots:
        s = f.field.coerce(s)
        if s in mults:
            continue
        m, f = root_multiplicity(f, s)
        mults[s] = m
    return f, mults


def y_poly(field: Field, alpha, beta) -> Polynomial:
    """Y = (X - alpha)(X - beta)."""
    return Polynomial.linear_root(field, alpha) * Polynomial.linear_root(field, beta)


def y_decompose(f: Polynomial, alpha, beta):
    """Unique ``(f1, f2)`` with ``f = f1(Y) + (X - alpha) * f2(Y)``."""
    F = f.field
    alpha = F.coerce(alpha)
    Y = y_poly(F, alpha, beta)
    c1, c2 = [], []
    while f:
        f, r = divmod_poly(f, Y)
        # r = r0 + r1 X = (r0 + r1 alpha) + r1 (X - alpha)
        r0, r1 = r[0], r[1]
        c1.append(F.add(r0, F.mul(r1, alpha)))
        c2.append(r1)
    return Polynomial._raw(F, c1), Polynomial._raw(F, c2)


def is_poly_in_Y(f: Polynomial, alpha, beta):
    """Membership of ``f`` in K[Y]; returns ``(yes, g)`` with ``f = g(Y)`` when yes."""
    f1, f2 = y_decompose(f, alpha, beta)
    if f2:
        return False, None
    return True, f1


def compose_in_Y(g: Polynomial, alpha, beta) -> Polynomial:
    """Expand ``g((X - alpha)(X - beta))``."""
    F = g.field
    Y = y_poly(F, alpha, beta)
    out = Polynomial.zero(F)
    for c in reversed(g.coeffs):
        out = out * Y + Polynomial._raw(F, (c,))
    return out
