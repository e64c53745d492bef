import pytest

from quadnets.baselocus import (
    BaseLocusNotFinite,
    basepoint_multiplicity,
    find_rational_basepoints,
    label_chains,
    local_multiplicity,
    net_type,
    nondegeneracy_check,
)
from quadnets.exact.fields import GF, QQ
from quadnets.exact.poly import MultiPoly
from quadnets.exact.series import evaluate_at_series, series_solve_system
from quadnets.quadric import Net, ProjPoint, assumption1_check


def pt(*c, field=QQ):
    return ProjPoint(c, field)


def test_basepoints_of_62(net_of):
    locus = find_rational_basepoints(net_of("{6,2}"))
    assert set(locus.points) == {pt(1, 0, 0, 0), pt(0, 1, 0, 0)}
    assert locus.certified


def test_basepoints_of_gf2_net(net_of):
    F = GF(2)
    locus = find_rational_basepoints(net_of("{1,1,1,1,1,1,1,1}"))
    assert len(locus.points) == 8 and locus.certified
    assert pt(1, 1, 1, 0, field=F) in locus.points and pt(0, 1, 1, 1, field=F) in locus.points
    assert set(locus.multiplicities) == {1}


def test_infinite_base_locus():
    with pytest.raises(BaseLocusNotFinite, match="base locus not finite"):
        find_rational_basepoints(Net.parse(["X*Y", "X*Z", "X*W"]))


@pytest.mark.parametrize("label, point, mult", [("{8}_2", (1, 0, 0, 0), 8), ("{5,3}", (0, 1, 0, 0), 3), ("{8}_1", (1, 0, 0, 0), 8)])
def test_multiplicity(net_of, label, point, mult):
    net = net_of(label)
    p = pt(*point)
    assert basepoint_multiplicity(net, p) == mult
    assert local_multiplicity(net, p) == mult


def test_simple_points_over_gf2(net_of):
    net = net_of("{1,1,1,1,1,1,1,1}")
    for p in find_rational_basepoints(net).points:
        assert basepoint_multiplicity(net, p) == 1


def test_series_branch_of_82_vanishes_to_order_8(net_of):
    net = net_of("{8}_2")
    # chart X = 1: Q2 = Z + YW and Q3 = W - Y^2 + Z^2 cut a smooth branch; parametrise by Y
    y, z, w = MultiPoly.gens(QQ, 3, ("Y", "Z", "W"))
    one = MultiPoly.constant(QQ, 3, 1, ("Y", "Z", "W"))
    local = [f.to_poly().substitute([one, y, z, w], 3, ("Y", "Z", "W")) for f in net.forms]
    sz, sw = series_solve_system([local[1], local[2]], 0, [0, 0], order=16)
    t_series = sz.variable(QQ, 16)
    assert evaluate_at_series(local[0], [t_series, sz, sw]).valuation() == 8


@pytest.mark.parametrize(
    "label, mults, chains",
    [
        ("{4,2,2}", (4, 2, 2), [(1, 2, 3, 4), (5, 6), (7, 8)]),
        ("{8}_1", (8,), [tuple(range(1, 9))]),
        ("{3,3,2}_1", (3, 3, 2), [(1, 2, 3), (4, 5, 6), (7, 8)]),
        ("{3,3,2}_2", (3, 3, 2), [(1, 2, 3), (4, 5, 6), (7, 8)]),
    ],
)
def test_net_type_and_chains(net_of, label, mults, chains):
    t, ch = net_type(net_of(label))
    assert t.multiplicities == mults
    assert [c.indices for c in ch] == chains


def test_422_chain_points(net_of):
    _, ch = net_type(net_of("{4,2,2}"))
    assert [c.point for c in ch] == [pt(1, 0, 0, 0), pt(0, 1, 0, 0), pt(0, 0, 1, 0)]


def test_all_catalog_nets_have_the_listed_type(catalog, net_of):
    for e in catalog:
        net = net_of(e.label)
        locus = find_rational_basepoints(net)
        assert assumption1_check(net, locus.points)
        t, _ = net_type(net, locus)
        assert t.multiplicities == e.net_type


def test_label_chains_tie_break():
    pts = [pt(0, 0, 1, 0), pt(1, 0, 0, 0), pt(0, 1, 0, 0)]
    ch = label_chains(pts, [2, 2, 4])
    assert [c.point for c in ch] == [pt(0, 1, 0, 0), pt(1, 0, 0, 0), pt(0, 0, 1, 0)]
    assert [c.indices for c in ch] == [(1, 2, 3, 4), (5, 6), (7, 8)]


@pytest.mark.parametrize(
    "points, ok",
    [
        ([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], True),
        ([(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0)], False),
        ([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0), (1, 2, 3, 0)], False),
    ],
)
def test_nondegeneracy(points, ok):
    assert bool(nondegeneracy_check([pt(*p) for p in points])) is ok


def test_gf2_points_in_general_position(net_of):
    assert nondegeneracy_check(find_rational_basepoints(net_of("{1,1,1,1,1,1,1,1}")).points)


def test_multiplicity_independent_of_pair(catalog, net_of):
    from quadnets.baselocus import multiplicities_by_pair

    for e in catalog:
        net = net_of(e.label)
        locus = find_rational_basepoints(net)
        for p, m in zip(locus.points, locus.multiplicities):
            orders = multiplicities_by_pair(net, p)
            assert orders and set(orders) == {m}, (e.label, p, orders)
