"""Buchberger's algorithm and zero-dimensional quotient algebras."""

from __future__ import annotations

from .fields import FieldMismatchError
from .linalg import minimal_polynomial, rank
from .poly import MultiPoly, monomials_up_to

INFINITE = float("inf")

ORDERS = {
    "grlex": lambda e: (sum(e), e),
    "lex": lambda e: e,
}


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _lead(terms, key):
    return max(terms, key=key)


def _reduce_terms(terms, basis, key, field):
    """Full reduction of a term dict by ``basis`` (list of (lm, monic term dict))."""
    terms = dict(terms)
    rem = {}
    while terms:
        lm = _lead(terms, key)
        c = terms[lm]
        for glm, g in basis:
            if _divides(glm, lm):
                shift = tuple(x - y for x, y in zip(lm, glm))
                for e, v in g.items():
                    ne = tuple(a + b for a, b in zip(e, shift))
                    s = terms.get(ne, field.zero) - c * v
                    if s:
                        terms[ne] = s
                    else:
                        terms.pop(ne, None)
                break
        else:
            rem[lm] = c
            del terms[lm]
    return rem


def _monic(terms, key, field):
    lc = terms[_lead(terms, key)]
    inv = field.one / lc
    return {e: v * inv for e, v in terms.items()}


def _check_gens(gens):
    if not gens:
        raise ValueError("empty generator list")
    f0 = gens[0]
    for g in gens[1:]:
        if g.field != f0.field:
            raise FieldMismatchError(f"generators over {f0.field} and {g.field} mixed")
        if g.nvars != f0.nvars:
            raise ValueError("generators in different numbers of variables")
    return f0.field, f0.nvars, f0.names


def groebner_basis(gens, order="grlex"):
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    The result is sorted by decreasing leading monomial and every element is
    monic, so two calls on generating sets of the same ideal return equal lists.
    """
    field, nvars, names = _check_gens(gens)
    key = ORDERS[order]
    G = []
    for g in gens:
        if g.terms:
            t = _monic(g.terms, key, field)
            G.append((_lead(t, key), t))
    if not G:
        return []
    pairs = {(i, j) for i in range(len(G)) for j in range(i)}
    while pairs:
        i, j = min(pairs, key=lambda ij: key(_lcm(G[ij[0]][0], G[ij[1]][0])))
        pairs.discard((i, j))
        (lmi, fi), (lmj, fj) = G[i], G[j]
        lcm = _lcm(lmi, lmj)
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue  # coprime leading monomials: S-polynomial reduces to zero
        if any(
            k not in (i, j)
            and _divides(G[k][0], lcm)
            and (max(i, k), min(i, k)) not in pairs
            and (max(j, k), min(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue  # chain criterion
        s = {}
        for lm, f, sign in ((lmi, fi, 1), (lmj, fj, -1)):
            shift = tuple(x - y for x, y in zip(lcm, lm))
            for e, v in f.items():
                ne = tuple(a + b for a, b in zip(e, shift))
                val = s.get(ne, field.zero) + (v if sign > 0 else -v)
                if val:
                    s[ne] = val
                else:
                    s.pop(ne, None)
        r = _reduce_terms(s, G, key, field)
        if r:
            r = _monic(r, key, field)
            G.append((_lead(r, key), r))
            n = len(G) - 1
            pairs.update((n, k) for k in range(n))
    # minimise: a divisor's leading monomial never sorts after its multiple
    minimal = []
    for lm, f in sorted(G, key=lambda t: key(t[0])):
        if not any(_divides(m, lm) for m, _ in minimal):
            minimal.append((lm, f))
    # interreduce
    reduced = []
    for idx, (lm, f) in enumerate(minimal):
        others = [g for k, g in enumerate(minimal) if k != idx]
        tail = {e: v for e, v in f.items() if e != lm}
        r = _reduce_terms(tail, others, key, field)
        r[lm] = field.one
        reduced.append((lm, r))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return [MultiPoly(field, nvars, t, names) for _, t in reduced]


def normal_form(f, basis, order="grlex"):
    """Remainder of ``f`` on division by a Gröbner basis."""
    key = ORDERS[order]
    B = [(_lead(g.terms, key), _monic(g.terms, key, g.field)) for g in basis if g.terms]
    return MultiPoly(f.field, f.nvars, _reduce_terms(f.terms, B, key, f.field), f.names)


def ideal_contains(gens, f, order="grlex"):
    return not normal_form(f, groebner_basis(gens, order), order).terms


def standard_monomials(basis, order="grlex"):
    """Monomials outside the leading-term ideal, or ``None`` if there are infinitely many."""
    if not basis:
        return None
    nvars = basis[0].nvars
    key = ORDERS[order]
    lms = [_lead(g.terms, key) for g in basis]
    if any(all(x == 0 for x in lm) for lm in lms):
        return []
    bounds = []
    for i in range(nvars):
        pure = [lm[i] for lm in lms if all(x == 0 for k, x in enumerate(lm) if k != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []

    def rec(prefix, i):
        if i == nvars:
            if not any(_divides(lm, prefix) for lm in lms):
                out.append(tuple(prefix))
            return
        for k in range(bounds[i]):
            rec(prefix + [k], i + 1)

    rec([], 0)
    out.sort(key=key)
    return out


def quotient_dimension(gens):
    """``dim k[x]/I``, or :data:`INFINITE` when the quotient is infinite-dimensional."""
    if not gens:
        raise ValueError("empty generator list")
    basis = groebner_basis(gens)
    std = standard_monomials(basis)
    return INFINITE if std is None else len(std)


def truncated_quotient_dimension(gens, bound):
    """``dim k[x] / (I + m^bound)`` by linear algebra on polynomials of degree < bound.

    Independent of Gröbner bases: the image of ``I`` modulo ``m^bound`` is spanned
    by the truncated products ``x^a * g``, so the dimension is the number of
    monomials of degree < bound minus the rank of those products.
    """
    field, nvars, _ = _check_gens(gens)
    monos = monomials_up_to(nvars, bound - 1)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        low = min((sum(e) for e in g.terms), default=bound)
        for a in monos:
            if sum(a) + low >= bound:
                continue
            row = [field.zero] * len(monos)
            for e, c in g.terms.items():
                ne = tuple(x + y for x, y in zip(a, e))
                if ne in index:
                    row[index[ne]] = c
            rows.append(row)
    return len(monos) - (rank(rows, field) if rows else 0)


class QuotientAlgebra:
    """The finite-dimensional algebra ``k[x]/I`` for a zero-dimensional ideal ``I``."""

    def __init__(self, gens):
        self.field, self.nvars, self.names = _check_gens(gens)
        self.basis = groebner_basis(gens)
        std = standard_monomials(self.basis)
        if std is None:
            raise ValueError("ideal is not zero-dimensional")
        self.monomials = std
        self._index = {m: i for i, m in enumerate(std)}

    @property
    def dimension(self):
        return len(self.monomials)

    def coordinates(self, f):
        r = normal_form(f, self.basis)
        v = [self.field.zero] * self.dimension
        for e, c in r.terms.items():
            v[self._index[e]] = c
        return v

    def multiplication_matrix(self, f):
        """Matrix of multiplication by ``f`` (columns = images of the standard monomials)."""
        cols = [self.coordinates(f.mul_monomial(m)) for m in self.monomials]
        return [list(r) for r in zip(*cols)]

    def eliminant(self, i):
        """Monic minimal polynomial of the i-th coordinate function, coefficients low-to-high."""
        if self.dimension == 0:
            return [self.field.one]
        x = MultiPoly.variable(self.field, self.nvars, i, self.names)
        return minimal_polynomial(self.multiplication_matrix(x), self.field)
