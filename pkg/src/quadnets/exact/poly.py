"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .fields import QQ, Field, FieldMismatchError

DEFAULT_NAMES = {
    1: ("x",),
    2: ("x", "y"),
    3: ("x", "y", "z"),
    4: ("X", "Y", "Z", "W"),
}


def grlex_key(e):
    """Sort key for graded-lexicographic order (larger key = larger monomial)."""
    return (sum(e), e)


class MultiPoly:
    """A polynomial in ``nvars`` variables: a map exponent-tuple -> nonzero coefficient.

    Instances are treated as immutable; every operation returns a new polynomial.
    """

    __slots__ = ("field", "nvars", "terms", "names")

    def __init__(self, field: Field, nvars: int, terms=None, names=None):
        self.field = field
        self.nvars = nvars
        self.names = tuple(names) if names else DEFAULT_NAMES.get(nvars, tuple(f"x{i}" for i in range(nvars)))
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have {nvars} entries")
                c = field(c)
                if c:
                    clean[e] = clean.get(e, field.zero) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    # construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, field, nvars, c, names=None):
        return cls(field, nvars, {(0,) * nvars: c}, names)

    @classmethod
    def variable(cls, field, nvars, i, names=None):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1}, names)

    @classmethod
    def gens(cls, field, nvars, names=None):
        return [cls.variable(field, nvars, i, names) for i in range(nvars)]

    def _new(self, terms):
        p = MultiPoly.__new__(MultiPoly)
        p.field, p.nvars, p.names, p.terms = self.field, self.nvars, self.names, terms
        return p

    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise FieldMismatchError(f"polynomials over {self.field} and {other.field} mixed")
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables mixed")
            return other
        if isinstance(other, Fraction) and self.field.is_finite:
            raise FieldMismatchError(f"rational constant combined with a polynomial over {self.field}")
        try:
            c = self.field(other)
        except FieldMismatchError:
            raise
        except (TypeError, ValueError):
            return None
        return MultiPoly.constant(self.field, self.nvars, c, self.names)

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            s = t.get(e)
            s = c if s is None else s + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return self._new(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.field, self.nvars, 1, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = self.field(c)
        if not c:
            return self._new({})
        return self._new({e: c * v for e, v in self.terms.items()})

    def mul_monomial(self, mono, c=None):
        c = self.field.one if c is None else c
        return self._new({tuple(a + b for a, b in zip(e, mono)): v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        o = self._check(other)
        return o is not None and self.terms == o.terms

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # queries -----------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self):
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self, degree=None):
        if not self.terms:
            return True
        ds = {sum(e) for e in self.terms}
        return len(ds) == 1 and (degree is None or degree in ds)

    def homogeneous_part(self, d):
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def leading_term(self):
        """(exponent, coefficient) of the grlex-largest monomial."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.field.zero)

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.field.one / self.leading_term()[1])

    def diff(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                v = c * e[i]
                if v:
                    t[tuple(ne)] = v
        return self._new(t)

    def gradient(self):
        return [self.diff(i) for i in range(self.nvars)]

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        point = [self.field(x) for x in point]
        total = self.field.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def substitute(self, values, nvars=None, names=None):
        """Compose with ``values``: one polynomial (or scalar) per variable.

        The result lives in the ring of the substituted polynomials.
        """
        if nvars is None:
            nvars = next((v.nvars for v in values if isinstance(v, MultiPoly)), self.nvars)
            names = names or next((v.names for v in values if isinstance(v, MultiPoly)), None)
        vals = [v if isinstance(v, MultiPoly) else MultiPoly.constant(self.field, nvars, v, names) for v in values]
        result = MultiPoly(self.field, nvars, {}, names)
        cache = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(self.field, nvars, c, names)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = vals[i] ** k
                    term = term * cache[key]
            result = result + term
        return result

    def with_names(self, names):
        p = self._new(dict(self.terms))
        p.names = tuple(names)
        return p

    def to_field(self, field):
        """Reduce (or reinterpret) the coefficients in another field."""
        if field == self.field:
            return self
        if self.field == QQ:
            conv = {e: field(c) for e, c in self.terms.items()}
        elif field == QQ:
            conv = {e: int(c) for e, c in self.terms.items()}
        else:
            raise FieldMismatchError(f"cannot move coefficients from {self.field} to {field}")
        return MultiPoly(field, self.nvars, conv, self.names)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k
            )
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree ``d``."""
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def monomials_up_to(nvars, d):
    return [e for k in range(d + 1) for e in monomials_of_degree(nvars, k)]


def box_monomials(bounds):
    return [tuple(e) for e in product(*(range(b) for b in bounds))]


def power_of_maximal_ideal(field, nvars, n, names=None):
    """Generators of ``m^n`` where ``m`` is the ideal of the origin."""
    return [MultiPoly(field, nvars, {e: 1}, names) for e in monomials_of_degree(nvars, n)]
