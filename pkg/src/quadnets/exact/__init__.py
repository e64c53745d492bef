"""Exact arithmetic: fields, polynomials, linear algebra, Groebner bases, power series, Smith form."""
