"""Univariate factorisation over QQ and GF(p), backed by sympy."""

from __future__ import annotations

from fractions import Fraction

import sympy

from .fields import QQ
from .poly import MultiPoly


def _to_sympy(p: MultiPoly, t):
    if p.nvars != 1:
        raise ValueError("factor_univariate expects a polynomial in one variable")
    if p.field == QQ:
        return sympy.Poly(
            sum(sympy.Rational(c.numerator, c.denominator) * t ** e[0] for e, c in p.terms.items()),
            t,
            domain="QQ",
        )
    return sympy.Poly(
        sum(int(c) * t ** e[0] for e, c in p.terms.items()), t, modulus=p.field.characteristic
    )


def _from_sympy(sp_poly, field, names):
    terms = {}
    for (k,), c in sp_poly.terms():
        if field == QQ:
            c = sympy.Rational(c)
            terms[(k,)] = Fraction(int(c.p), int(c.q))
        else:
            terms[(k,)] = int(c)
    return MultiPoly(field, 1, terms, names)


def factor_univariate(p: MultiPoly):
    """Factor into monic irreducibles.

    Returns ``(unit, [(factor, multiplicity), ...])`` with
    ``unit * prod(factor**multiplicity) == p``.  Factors are sorted by degree,
    then by their coefficient list, so the output is deterministic.
    """
    if not p.terms:
        raise ValueError("cannot factor the zero polynomial")
    t = sympy.Symbol("t")
    sp = _to_sympy(p, t)
    unit, facs = sp.factor_list()
    out = []
    for f, m in facs:
        fp = _from_sympy(f, p.field, p.names).monic()
        out.append((fp, m))
    # fold leading coefficients into the unit
    prod = MultiPoly.constant(p.field, 1, 1, p.names)
    for f, m in out:
        prod = prod * f**m
    unit = p.leading_term()[1] / prod.leading_term()[1]
    out.sort(key=lambda fm: (fm[0].total_degree(), sorted((e, int(c) if p.field != QQ else c) for e, c in fm[0].terms.items())))
    return unit, out


def univariate(coeffs, field, name="t"):
    """Polynomial from low-to-high coefficients."""
    return MultiPoly(field, 1, {(k,): c for k, c in enumerate(coeffs) if c}, (name,))


def roots_in_field(p: MultiPoly):
    """Distinct roots of ``p`` lying in its coefficient field, and whether ``p`` splits there."""
    if p.field.is_finite:
        roots = [a for a in p.field.elements() if not p.evaluate([a])]
        # p splits iff the roots account for the whole degree (with multiplicity)
        _, facs = factor_univariate(p)
        splits = all(f.total_degree() == 1 for f, _ in facs)
        return roots, splits
    _, facs = factor_univariate(p)
    roots = []
    splits = True
    for f, _ in facs:
        if f.total_degree() == 1:
            roots.append(-f.coefficient((0,)))
        else:
            splits = False
    return sorted(roots), splits


__all__ = ["factor_univariate", "univariate", "roots_in_field"]
