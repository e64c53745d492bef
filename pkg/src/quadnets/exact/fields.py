"""Ground fields: the rationals and prime fields GF(p).

Rational scalars are plain :class:`fractions.Fraction` values (Python ints
are accepted wherever a rational is expected).  Prime-field scalars are
:class:`Fp` instances carrying their modulus, so that arithmetic between
two different fields fails loudly instead of silently coercing.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class FieldMismatchError(TypeError):
    """Raised when scalars or polynomials over different fields are combined."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Fp:
    """An element of GF(p), stored as its canonical representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) and GF({other.p}) mixed")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"GF({self.p}) and Q mixed")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError(f"division by zero in GF({self.p})")
            return Fp(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """A ground field tag: ``QQ`` or ``GF(p)``.

    Calling a field converts a Python number into one of its elements.
    """

    characteristic: int

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    def contains(self, x) -> bool:
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, Fp):
            raise FieldMismatchError(f"GF({value.p}) element given where Q expected")
        return Fraction(value)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def __str__(self):
        return "Q"


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, Fp):
            if value.p != p:
                raise FieldMismatchError(f"GF({value.p}) element given where GF({p}) expected")
            return value
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} has no reduction mod {p}")
            return Fp(value.numerator * pow(value.denominator, -1, p), p)
        return Fp(int(value), p)

    def contains(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.characteristic

    def elements(self):
        p = self.characteristic
        return [Fp(i, p) for i in range(p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})"

    __str__ = __repr__


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_of(x) -> Field:
    """The field a scalar belongs to."""
    if isinstance(x, Fp):
        return GF(x.p)
    if isinstance(x, (int, Fraction)):
        return QQ
    raise TypeError(f"not an exact scalar: {x!r}")


def parse_field(text: str) -> Field:
    """Parse ``"Q"``, ``"QQ"`` or ``"GF(p)"``."""
    t = text.strip().replace(" ", "")
    if t.upper() in ("Q", "QQ"):
        return QQ
    up = t.upper()
    if up.startswith("GF(") and up.endswith(")"):
        return GF(int(t[3:-1]))
    if up.startswith("GF") and up[2:].isdigit():
        return GF(int(t[2:]))
    raise ValueError(f"unknown field {text!r}; expected Q or GF(p)")
