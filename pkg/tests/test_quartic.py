from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadnets.exact.fields import GF, QQ
from quadnets.exact.poly import MultiPoly
from quadnets.quadric import Net, ProjPoint
from quadnets.quartic import (
    BeyondADE,
    NonIsolatedSingularities,
    PlaneQuartic,
    SingularNetError,
    classify_ade,
    classify_germ,
    cubic_shape,
    discriminant_quartic,
    milnor_number,
    quartic_root_system,
    singular_points,
)

NAMES = ("x", "y")


def germ(text):
    x, y = MultiPoly.gens(QQ, 2, NAMES)
    return eval(text, {"x": x, "y": y})


NORMAL_FORMS = (
    [(f"x**2 + y**{n + 1}", "A", n) for n in range(1, 8)]
    + [(f"x**2*y + y**{n - 1}", "D", n) for n in range(4, 8)]
    + [("x**3 + y**4", "E", 6), ("x**3 + x*y**3", "E", 7)]
)


@pytest.mark.parametrize("text, family, n", NORMAL_FORMS)
def test_normal_forms(text, family, n):
    rec = classify_germ(germ(text))
    assert (rec.tag.family, rec.tag.rank, rec.milnor) == (family, n, n)


def test_node_from_sum_of_squares():
    rec = classify_germ(germ("x**2 + y**2"))
    assert str(rec.tag) == "A1" and rec.milnor == 1 and rec.corank == 0


def test_beyond_ade():
    with pytest.raises(BeyondADE):
        classify_germ(germ("x**2 + y**9"))
    with pytest.raises(BeyondADE):
        classify_germ(germ("x**4 + y**4"))


def test_milnor_number_of_e8_germ_is_8():
    assert milnor_number(germ("x**3 + y**5")) == 8


@pytest.mark.parametrize("text, shape", [("x**3 - x*y**2", "distinct"), ("x**2*y", "double"), ("(x+y)**3", "triple")])
def test_cubic_shape(text, shape):
    assert cubic_shape(germ(text)) == shape


@given(st.integers(1, 7), st.integers(-3, 3).filter(bool), st.integers(-3, 3))
def test_a_series_invariant_under_shear(n, a, b):
    # x -> x + b*y keeps the germ of type A_n
    x, y = MultiPoly.gens(QQ, 2, NAMES)
    g = (x + y.scale(b)) ** 2 + (y ** (n + 1)).scale(a)
    rec = classify_germ(g)
    assert (rec.tag.family, rec.tag.rank) == ("A", n)


def test_discriminant_of_62_with_scalar(net_of):
    disc = discriminant_quartic(net_of("{6,2}"))
    expected = PlaneQuartic.parse("1/4*b*c*(a*b - c^2)")
    assert disc == expected


@pytest.mark.parametrize(
    "label, table",
    [("{2,2,2,2}", "a*b*(a*b - 4*c^2)"), ("{8}_2", "b^4 + 2*a*b^2*c + a^2*c^2 + 4*c^4")],
)
def test_discriminant_proportional(net_of, label, table):
    assert discriminant_quartic(net_of(label)).proportional_to(PlaneQuartic.parse(table))


def test_singular_net_rejected():
    with pytest.raises(SingularNetError):
        discriminant_quartic(Net.parse(["X^2", "X*Y", "Y^2"]))


def test_characteristic_two_rejected(net_of):
    with pytest.raises(ValueError):
        discriminant_quartic(net_of("{1,1,1,1,1,1,1,1}"))


def test_singular_points_of_e7_quartic():
    q = PlaneQuartic.parse("b*(4*a*b^2 + b*c^2 + 4*c^3)")
    sp = singular_points(q)
    assert ProjPoint([1, 0, 0]) in sp.points and sp.certified


def test_singular_points_of_line_arrangement():
    q = PlaneQuartic.parse("a*b*c*(a+b)")
    sp = singular_points(q)
    # the lines a, b and a + b all pass through [0,0,1]
    assert set(sp.points) == {ProjPoint(p) for p in ([1, 0, 0], [1, -1, 0], [0, 1, 0], [0, 0, 1])}


def test_fermat_is_smooth():
    q = PlaneQuartic.parse("a^4 + b^4 + c^4")
    assert singular_points(q).points == () and singular_points(q).certified
    rs = quartic_root_system(q)
    assert str(rs) == "smooth" and rs.rank == 0


def test_unsplit_singularities_are_incomplete():
    # two conics meeting at the four points with a^2 = 2 b^2 ... over QQ the nodes are irrational
    q = PlaneQuartic.parse("(a^2 - 2*b^2 + c^2)*(a^2 - 2*b^2 - c^2)")
    sp = singular_points(q)
    assert not sp.certified and sp.unresolved


def test_non_reduced_quartic():
    with pytest.raises(NonIsolatedSingularities):
        singular_points(PlaneQuartic.parse("a^2*b*c"))


def test_a7_and_e7_points(net_of):
    q = discriminant_quartic(net_of("{8}_2"))
    rec = classify_ade(q, ProjPoint([1, 0, 0]))
    assert str(rec.tag) == "A7" and rec.milnor == 7
    q = discriminant_quartic(net_of("{8}_1"))
    (rec,) = quartic_root_system(q).records
    assert str(rec.tag) == "E7"


@pytest.mark.parametrize("text, system", [("b*(a^2*b - 4*c^3)", "A5+A2"), ("a*b*c*(a+b)", "D4+3A1")])
def test_root_systems(text, system):
    rs = quartic_root_system(PlaneQuartic.parse(text))
    assert str(rs) == system and rs.rank == 7


def test_catalog_quartics_have_total_milnor_at_most_7(q_entries):
    for e in q_entries:
        rs = quartic_root_system(PlaneQuartic.parse(e.quartic))
        assert sum(r.milnor for r in rs.records) <= 7


def test_linear_change_of_variables():
    q = PlaneQuartic.parse("a^3*b + c^4")
    swapped = q.substitute_linear(((0, 1, 0), (1, 0, 0), (0, 0, 1)))
    assert swapped == PlaneQuartic.parse("b^3*a + c^4")
    scaled = q.substitute_linear(((Fraction(1, 2), 0, 0), (0, 1, 0), (0, 0, 1)))
    assert scaled.proportional_to(PlaneQuartic.parse("a^3*b + 8*c^4"))


def test_over_prime_field():
    q = PlaneQuartic.parse("a*b*c*(a+b)", GF(7))
    assert str(quartic_root_system(q)) == "D4+3A1"
