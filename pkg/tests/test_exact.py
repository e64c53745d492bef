from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadnets.exact.factor import factor_univariate, roots_in_field, univariate
from quadnets.exact.fields import GF, QQ, FieldMismatchError, Fp, field_of, parse_field
from quadnets.exact.groebner import (
    INFINITE,
    QuotientAlgebra,
    groebner_basis,
    ideal_contains,
    normal_form,
    quotient_dimension,
    truncated_quotient_dimension,
)
from quadnets.exact.linalg import determinant, matmul, minimal_polynomial, nullspace, rank, solve
from quadnets.exact.poly import MultiPoly, power_of_maximal_ideal
from quadnets.exact.series import TruncSeries, evaluate_at_series, newton_lift, series_solve_system
from quadnets.exact.smith import AbelianGroup, cokernel, smith_form, smith_normal_form

PRIMES = [2, 3, 5, 7, 11]


def xy(field=QQ):
    return MultiPoly.gens(field, 2)


# ---------------------------------------------------------------- fields


def test_rationals_are_reduced():
    assert QQ(Fraction(6, -4)) == Fraction(-3, 2)
    assert Fraction(6, -4).denominator == 2


@pytest.mark.parametrize("p", PRIMES)
def test_fp_canonical_representatives(p):
    F = GF(p)
    assert [int(x) for x in F.elements()] == list(range(p))
    assert int(F(-1)) == p - 1


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        GF(3)(1) + GF(5)(1)
    with pytest.raises(FieldMismatchError):
        QQ(GF(3)(1))


def test_reduction_of_fraction_mod_p():
    assert GF(7)(Fraction(1, 2)) == GF(7)(4)
    with pytest.raises(ZeroDivisionError):
        GF(3)(Fraction(1, 3))


def test_parse_field_and_field_of():
    assert parse_field("Q") == QQ
    assert parse_field("GF(7)") == GF(7)
    assert parse_field("gf11") == GF(11)
    assert field_of(Fp(2, 5)) == GF(5)
    with pytest.raises(ValueError):
        parse_field("GF(4)")


@given(st.sampled_from(PRIMES), st.integers(), st.integers())
def test_fp_field_axioms(p, a, b):
    F = GF(p)
    x, y = F(a), F(b)
    assert x + y == y + x
    assert (x - y) + y == x
    if y:
        assert (x / y) * y == x
        assert y ** (p - 1) == F.one


# ---------------------------------------------------------------- polynomials


def test_polynomial_stores_no_zero_coefficients():
    x, y = xy()
    p = (x + y) - y
    assert p.terms == {(1, 0): 1}
    with pytest.raises(ValueError):
        MultiPoly(QQ, 2, {(1,): 1})


def test_homogeneity_is_queried():
    x, y = xy()
    assert (x * y + y * y).is_homogeneous(2)
    assert not (x * y + y).is_homogeneous()


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_product_evaluates_to_product(c1, c2):
    x, y = xy()
    f = x.scale(c1[0]) + y.scale(c1[1]) + MultiPoly.constant(QQ, 2, c1[2])
    g = x * y.scale(c2[0]) + y.scale(c2[1]) ** 2 + MultiPoly.constant(QQ, 2, c2[2])
    pt = [Fraction(2), Fraction(-1, 3)]
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)


def test_derivative_and_substitution():
    x, y = xy()
    f = x**3 * y + y**2
    assert f.diff(0) == (x**2 * y).scale(3)
    swapped = f.substitute([y, x], 2)
    assert swapped == y**3 * x + x**2


# ---------------------------------------------------------------- linear algebra


def test_rank_nullspace_solve_det():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(m, QQ) == 2
    (k,) = nullspace(m, QQ)
    assert all(sum(QQ(a) * b for a, b in zip(row, k)) == 0 for row in m)
    assert solve([[2, 0], [0, 4]], [1, 1], QQ) == [Fraction(1, 2), Fraction(1, 4)]
    assert determinant([[1, 2], [3, 4]], QQ) == -2


def test_minimal_polynomial_of_nilpotent_block():
    m = [[QQ(0), QQ(1)], [QQ(0), QQ(0)]]
    assert minimal_polynomial(m, QQ) == [0, 0, 1]


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_nullity_plus_rank(m):
    assert rank(m, QQ) + len(nullspace(m, QQ, 3)) == 3


# ---------------------------------------------------------------- Groebner bases


def test_groebner_of_variables_is_itself():
    x, y = xy()
    assert set(groebner_basis([x, y])) == {x, y}
    (g,) = groebner_basis([MultiPoly.gens(GF(2), 1)[0]])
    assert g == MultiPoly.gens(GF(2), 1)[0]


def test_groebner_contains_y_minus_x():
    x, y = xy()
    one = MultiPoly.constant(QQ, 2, 1)
    gens = [x**2 - one, x * y - one]
    basis = groebner_basis(gens)
    assert (y - x) in basis or (x - y) in basis
    assert ideal_contains(gens, y - x)
    assert not ideal_contains(gens, x - one)


@pytest.mark.parametrize(
    "gens, expected",
    [
        (lambda x, y: [x, y], 1),
        (lambda x, y: [x**2, y**3], 6),
        (lambda x, y: [x], INFINITE),
        (lambda x, y: [x * y, x**2 + y**2 - MultiPoly.constant(QQ, 2, 2)], 4),
    ],
)
def test_quotient_dimension(gens, expected):
    x, y = xy()
    assert quotient_dimension(gens(x, y)) == expected


def _random_poly(coeffs, gens):
    x, y = gens
    monos = [MultiPoly.constant(x.field, 2, 1), x, y, x * x, x * y, y * y]
    return sum((m.scale(c) for m, c in zip(monos, coeffs)), MultiPoly(x.field, 2))


small_coeffs = st.lists(st.integers(-2, 2), min_size=6, max_size=6)


@given(small_coeffs, small_coeffs)
def test_buchberger_independent_of_generator_order(c1, c2):
    gens = xy()
    f, g = _random_poly(c1, gens), _random_poly(c2, gens)
    if f.is_zero() or g.is_zero():
        return
    b1 = groebner_basis([f, g])
    b2 = groebner_basis([g, f])
    # reduced Groebner bases are unique
    assert set(b1) == set(b2)
    for h in (f, g):
        assert normal_form(h, b1).is_zero()


@given(small_coeffs, small_coeffs, st.sampled_from([QQ, GF(3), GF(5)]))
def test_truncated_dimension_matches_groebner(c1, c2, F):
    gens = xy(F)
    f, g = _random_poly(c1, gens), _random_poly(c2, gens)
    if f.is_zero() or g.is_zero():
        return
    bound = 5
    with_power = [f, g] + power_of_maximal_ideal(F, 2, bound)
    assert truncated_quotient_dimension([f, g], bound) == quotient_dimension(with_power)


def test_eliminant_roots_of_quotient_algebra():
    x, y = xy()
    one = MultiPoly.constant(QQ, 2, 1)
    alg = QuotientAlgebra([x**2 - one, y - x])
    assert alg.dimension == 2
    assert alg.eliminant(0) == [-1, 0, 1]


# ---------------------------------------------------------------- power series


def test_series_valuation_reports_lower_bound():
    s = TruncSeries(QQ, [0, 0, 0], 3)
    assert s.valuation() is None
    assert TruncSeries(QQ, [0, 0, 5], 3).valuation() == 2


def test_series_inverse():
    s = TruncSeries(QQ, [1, 1], 6)
    inv = s.inverse()
    assert (s * inv) == TruncSeries.constant(QQ, 1, 6)
    assert inv.coeffs == [1, -1, 1, -1, 1, -1]


def test_series_solve_explicit_curve():
    F = QQ
    t, y, z = MultiPoly.gens(F, 3, ("t", "y", "z"))
    sy, sz = series_solve_system([y - t**2, z - t**3], 0, [0, 0], order=8)
    assert sy.coeffs == [0, 0, 1, 0, 0, 0, 0, 0]
    assert sz.coeffs == [0, 0, 0, 1, 0, 0, 0, 0]


def test_series_solve_linear():
    t, y, z = MultiPoly.gens(QQ, 3, ("t", "y", "z"))
    sy, sz = series_solve_system([y + z - t, y - z], 0, [0, 0], order=4)
    assert sy.coeffs[1] == sz.coeffs[1] == Fraction(1, 2)
    assert sy.coeffs[2:] == [0, 0]


@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([QQ, GF(5), GF(7)]))
def test_newton_residual_vanishes(a, b, F):
    t, y = MultiPoly.gens(F, 2, ("t", "y"))
    one = MultiPoly.constant(F, 2, 1, ("t", "y"))
    # y + y^2 * a - t * (1 + b*t): smooth at the origin
    eq = y + (y * y).scale(a) - t * (one + t.scale(b))
    (sol,) = newton_lift([eq], [1], 0, [F.zero], order=10)
    residual = evaluate_at_series(eq, [TruncSeries.variable(F, 10), sol])
    assert residual.is_zero()


# ---------------------------------------------------------------- Smith normal form


@pytest.mark.parametrize(
    "matrix, factors",
    [
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
        ([[2, 0], [0, 4]], [2, 4]),
        ([[2, 0], [0, 3]], [1, 6]),
        ([[0, 0], [0, 0]], []),
    ],
)
def test_smith_factors(matrix, factors):
    assert smith_normal_form(matrix) == (factors, len(factors))


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=2, max_size=4))
def test_smith_is_unimodular_equivalence(m):
    D, U, V = smith_form(m)
    assert matmul(matmul(U, m), V) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


@pytest.mark.parametrize("text", ["0", "Z/2", "(Z/2)^3", "Z^2 + Z/4", "Z/2 + Z/6"])
def test_group_string_round_trip(text):
    assert str(AbelianGroup.parse(text)) == text


def test_cokernel():
    assert str(cokernel([[2, 0], [0, 2]])) == "(Z/2)^2"
    assert str(cokernel([[1], [0]])) == "Z"


# ---------------------------------------------------------------- factorisation


def test_factor_rational():
    x = univariate([-1, 0, 1], QQ)
    unit, facs = factor_univariate(x)
    assert unit == 1
    assert [f.total_degree() for f, _ in facs] == [1, 1]
    _, facs = factor_univariate(univariate([1, 0, 1], QQ))
    assert len(facs) == 1 and facs[0][0].total_degree() == 2


def test_factor_over_gf2():
    p = univariate([0, -1, 0, 1], GF(2))
    _, facs = factor_univariate(p)
    t = MultiPoly.gens(GF(2), 1, ("t",))[0]
    one = MultiPoly.constant(GF(2), 1, 1, ("t",))
    assert dict(facs) == {t: 1, t + one: 2}
    roots, splits = roots_in_field(p)
    assert splits and {int(r) for r in roots} == {0, 1}


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=5), st.sampled_from([QQ, GF(3), GF(7)]))
def test_factor_re_expands(coeffs, F):
    p = univariate(coeffs, F)
    if p.is_zero():
        return
    unit, facs = factor_univariate(p)
    prod = MultiPoly.constant(F, 1, unit, p.names)
    for f, m in facs:
        prod = prod * f**m
    assert prod == p
