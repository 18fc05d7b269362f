"""Exact scalar arithmetic over the rationals and over prime fields GF(p).

A :class:`Field` knows how to bring a raw Python value into canonical form:
rationals are :class:`fractions.Fraction` instances (always reduced, positive
denominator), residues mod p are ints in ``range(p)``.  Matrices and
polynomials store these raw canonical values directly; :class:`Scalar` is the
boxed, operator-overloaded form used at the public surface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Field",
    "QQ",
    "GF",
    "Scalar",
    "FieldMismatch",
    "parse_scalar",
    "field_arith",
    "characteristic",
]

_MAX_PRIME = 2**63 - 1
_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


class FieldMismatch(ValueError):
    """Operands live in different fields."""


def _is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin; these bases are exact below 3.3e24."""
    if p < 2:
        return False
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in bases:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for a in bases:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """Descriptor for either the rationals (``p is None``) or GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise TypeError("field modulus must be an int")
            if self.p > _MAX_PRIME:
                raise ValueError(f"modulus {self.p} exceeds machine-word size")
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    # raw-value arithmetic; callers guarantee inputs are already canonical

    def norm(self, x):
        """Canonical form of an int/Fraction result of plain arithmetic."""
        if self.p is None:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def add(self, a, b):
        return self.norm(a + b)

    def sub(self, a, b):
        return self.norm(a - b)

    def mul(self, a, b):
        return self.norm(a * b)

    def neg(self, a):
        return self.norm(-a)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def coerce(self, x):
        """Bring an int, Fraction, str or Scalar into this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x!r} is not an element of {self!r}")
            return x.value
        if isinstance(x, str):
            return parse_scalar(x, self).value
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")
        if isinstance(x, Fraction) and self.p is not None and x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes in {self!r}")
        return self.norm(x)

    def render(self, a) -> str:
        if self.p is None:
            return str(a)
        return str(int(a))

    def elements(self):
        """All elements of a prime field, in increasing residue order."""
        if self.p is None:
            raise ValueError("QQ is infinite")
        return range(self.p)

    def random_element(self, rng, bound: int = 3):
        """Uniform residue for GF(p); integer in [-bound, bound] for QQ."""
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def scalar(self, x) -> "Scalar":
        return Scalar(self, self.coerce(x))


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def characteristic(field: Field) -> int:
    """0 for QQ, p for GF(p)."""
    return field.characteristic


@dataclass(frozen=True)
class Scalar:
    """A canonical field element tagged with its field."""

    field: Field
    value: object

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.render(self.value)

    def __repr__(self):
        return f"Scalar({self}, {self.field!r})"


def parse_scalar(text: str, field: Field) -> Scalar:
    """Parse ``"n"`` or ``"n/d"`` (optional sign) into ``field``.

    Over GF(p) the value is reduced mod p; ``"a/b"`` is read as a * b^-1.
    """
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ValueError(f"malformed scalar {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    if field.p is None:
        return Scalar(field, Fraction(num, den))
    if den % field.p == 0:
        raise ZeroDivisionError(f"denominator of {text!r} vanishes in {field!r}")
    return Scalar(field, num * pow(den, -1, field.p) % field.p)


def field_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two scalars of one field."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    try:
        fn = {"add": a.field.add, "sub": a.field.sub, "mul": a.field.mul, "div": a.field.div}[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return Scalar(a.field, fn(a.value, b.value))
