from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadnets.exact.fields import GF, QQ
from quadnets.parsing import (
    PolynomialSyntaxError,
    parse_polynomial,
    parse_quadric_poly,
    parse_quartic_poly,
)


def test_parses_products_powers_and_fractions():
    p = parse_quadric_poly("X*(Y+W) + 1/2*Y*W - Z^2")
    assert p.coefficient((1, 1, 0, 0)) == 1
    assert p.coefficient((0, 1, 0, 1)) == Fraction(1, 2)
    assert p.coefficient((0, 0, 2, 0)) == -1


def test_parses_over_prime_field():
    p = parse_quadric_poly("3*X*Y + 5*Z^2", GF(5))
    assert p.coefficient((0, 0, 2, 0)) == 0
    assert int(p.coefficient((1, 1, 0, 0))) == 3


@pytest.mark.parametrize("alias", ["a*b*c*(a+b)", "l1*l2*l3*(l1+l2)", "λ1*λ2*λ3*(λ1+λ2)", "lambda1*lambda2*lambda3*(lambda1+lambda2)"])
def test_quartic_variable_aliases(alias):
    assert parse_quartic_poly(alias) == parse_quartic_poly("a*b*c*(a+b)")


@pytest.mark.parametrize(
    "text, column",
    [
        ("X(Y+W)", 2),
        ("2X*Y", 2),
        ("X*Y +", 6),
        ("X*Q", 3),
        ("(X+Y*Z", 7),
    ],
)
def test_syntax_errors_carry_column(text, column):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_quadric_poly(text, line=4)
    assert info.value.line == 4
    assert info.value.column == column
    assert "line 4" in str(info.value)


@pytest.mark.parametrize("text", ["X*Y + W", "X^3", "0", "X*Y + W^3"])
def test_rejects_non_quadratic(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_quadric_poly(text)


def test_sign_only_between_terms():
    with pytest.raises(PolynomialSyntaxError):
        parse_quadric_poly("X*Y + -Z^2")
    assert parse_quadric_poly("-X*Y - Z^2") == parse_quadric_poly("-(X*Y + Z^2)")


def test_rejects_non_quartic():
    with pytest.raises(PolynomialSyntaxError):
        parse_quartic_poly("a^3*b + c")


@given(st.lists(st.integers(-9, 9), min_size=10, max_size=10))
def test_string_round_trip(coeffs):
    monos = ["X^2", "X*Y", "X*Z", "X*W", "Y^2", "Y*Z", "Y*W", "Z^2", "Z*W", "W^2"]
    text = "".join(f" {'-' if c < 0 else '+'} {abs(c)}*{m}" for c, m in zip(coeffs, monos))
    p = parse_polynomial(text, field=QQ)
    if p.is_zero():
        return
    assert parse_polynomial(str(p)) == p
