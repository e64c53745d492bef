"""Shared constructions for the test suite."""

from quadnets.exact.linalg import nullspace
from quadnets.quadric import Net, ProjPoint, QuadraticForm

MONOMIALS = [(i, j) for i in range(4) for j in range(i, 4)]


def net_through(points, field):
    """The net of quadrics through seven points, or ``None`` if they impose fewer conditions."""
    rows = [[p[i] * p[j] for i, j in MONOMIALS] for p in points]
    K = nullspace(rows, field, len(MONOMIALS))
    if len(K) != 3:
        return None
    return Net([QuadraticForm(dict(zip(MONOMIALS, v)), field) for v in K], field)


def random_points(rng, field, count):
    p = field.characteristic
    pts = []
    while len(pts) < count:
        c = [rng.randrange(p) if p else rng.randint(-3, 3) for _ in range(4)]
        if any(c):
            q = ProjPoint(c, field)
            if q not in pts:
                pts.append(q)
    return pts


SIMPLEX_SEVEN = ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1], [1, 2, 3, 4], [1, -1, 2, -3])


def simplex_net(field):
    """The net through the coordinate simplex and three further points in general position."""
    return net_through([ProjPoint(c, field) for c in SIMPLEX_SEVEN], field)
