"""Truncated power series in one variable and Newton lifting of smooth branches."""

from __future__ import annotations

from .linalg import rank
from .poly import MultiPoly

DEFAULT_ORDER = 16


class BranchNotSmooth(ValueError):
    """The Jacobian at the base point is singular, so the branch cannot be lifted."""


class TruncSeries:
    """``sum c_k t^k`` known modulo ``t^order``."""

    __slots__ = ("field", "coeffs", "order")

    def __init__(self, field, coeffs, order):
        self.field = field
        self.order = order
        cs = [field(c) for c in list(coeffs)[:order]]
        cs += [field.zero] * (order - len(cs))
        self.coeffs = cs

    @classmethod
    def constant(cls, field, c, order):
        return cls(field, [c], order)

    @classmethod
    def variable(cls, field, order):
        return cls(field, [0, 1], order)

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            if other.field != self.field:
                raise TypeError("series over different fields")
            return other
        return TruncSeries(self.field, [other], self.order)

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order)
        return TruncSeries(self.field, [a + b for a, b in zip(self.coeffs[:n], o.coeffs[:n])], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.field, [-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order)
        out = [self.field.zero] * n
        a, b = self.coeffs, o.coeffs
        for i in range(n):
            if a[i]:
                ai = a[i]
                for j in range(n - i):
                    if b[j]:
                        out[i + j] = out[i + j] + ai * b[j]
        return TruncSeries(self.field, out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = TruncSeries.constant(self.field, 1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        if not self.coeffs[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = self.order
        inv0 = self.field.one / self.coeffs[0]
        out = [inv0] + [self.field.zero] * (n - 1)
        for k in range(1, n):
            s = self.field.zero
            for j in range(1, k + 1):
                s = s + self.coeffs[j] * out[k - j]
            out[k] = -s * inv0
        return TruncSeries(self.field, out, n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def truncate(self, order):
        return TruncSeries(self.field, self.coeffs, min(order, self.order))

    def extend(self, order):
        """Same known coefficients, padded with zeros up to a larger order (for Newton steps)."""
        return TruncSeries(self.field, self.coeffs, order)

    def valuation(self):
        """Order of vanishing, or ``None`` when every stored coefficient is zero (order >= self.order)."""
        return next((k for k, c in enumerate(self.coeffs) if c), None)

    def is_zero(self):
        return self.valuation() is None

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[:n] == other.coeffs[:n]

    def __repr__(self):
        terms = [f"{c}*t^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"TruncSeries({' + '.join(terms) or '0'} + O(t^{self.order}))"


def evaluate_at_series(poly: MultiPoly, values):
    """Substitute one series per variable into ``poly``."""
    order = min(v.order for v in values)
    field = poly.field
    total = TruncSeries(field, [], order)
    powers = {}
    for e, c in poly.terms.items():
        term = TruncSeries.constant(field, c, order)
        for i, k in enumerate(e):
            if k:
                if (i, k) not in powers:
                    powers[(i, k)] = values[i] ** k
                term = term * powers[(i, k)]
        total = total + term
    return total


def _solve_series_linear(matrix, rhs):
    """Solve ``matrix @ x = rhs`` where entries are series and ``matrix(0)`` is invertible."""
    n = len(matrix)
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c].coeffs[0]), None)
        if piv is None:
            raise BranchNotSmooth("Jacobian is singular at the base point")
        m[c], m[piv] = m[piv], m[c]
        inv = m[c][c].inverse()
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [row[n] for row in m]


def newton_lift(eqs, unknowns, param, base, order=DEFAULT_ORDER):
    """Lift a smooth point of ``eqs = 0`` to power series in the parameter variable.

    ``eqs`` are ``len(unknowns)`` polynomials in a common ring; ``unknowns`` are
    variable indices, ``param`` the index of the parameter ``t``; every other
    variable is held at zero.  ``base`` gives the values of the unknowns at
    ``t = 0``.  Each Newton step doubles the number of correct coefficients.
    Returns one series per unknown.
    """
    field = eqs[0].field
    k = len(unknowns)
    if len(eqs) != k or len(base) != k:
        raise ValueError("need as many equations and base values as unknowns")
    nvars = eqs[0].nvars
    jac = [[f.diff(u) for u in unknowns] for f in eqs]

    def plug(sol, prec):
        vals = [TruncSeries(field, [], prec) for _ in range(nvars)]
        for u, s in zip(unknowns, sol):
            vals[u] = s.extend(prec)
        vals[param] = TruncSeries.variable(field, prec) if prec > 1 else TruncSeries(field, [], prec)
        return vals

    sol = [TruncSeries.constant(field, b, 1) for b in base]
    at0 = plug(sol, 1)
    if any(evaluate_at_series(f, at0).coeffs[0] for f in eqs):
        raise ValueError("base point does not satisfy the equations")
    if rank([[evaluate_at_series(j, at0).coeffs[0] for j in r] for r in jac], field) < k:
        raise BranchNotSmooth("Jacobian is singular at the base point")
    prec = 1
    while prec < order:
        prec = min(2 * prec, order)
        vals = plug(sol, prec)
        residual = [evaluate_at_series(f, vals) for f in eqs]
        J = [[evaluate_at_series(j, vals) for j in r] for r in jac]
        delta = _solve_series_linear(J, residual)
        sol = [s.extend(prec) - d for s, d in zip(sol, delta)]
    return sol


def series_solve_system(eqs, param, base, order=DEFAULT_ORDER):
    """Two equations in three variables: solve for the two non-parameter variables.

    ``param`` is the index of the parameter variable and ``base`` the values of the
    other two variables (in index order) at ``t = 0``.
    """
    if len(eqs) != 2 or eqs[0].nvars != 3:
        raise ValueError("series_solve_system expects 2 polynomials in 3 variables")
    unknowns = [i for i in range(3) if i != param]
    return newton_lift(eqs, unknowns, param, base, order)
