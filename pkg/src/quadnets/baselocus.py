"""Basepoints of a net, their multiplicities, and the type {m_1, ..., m_n}."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, product

from .exact.factor import roots_in_field, univariate
from .exact.groebner import INFINITE, QuotientAlgebra, quotient_dimension, truncated_quotient_dimension
from .exact.linalg import rank
from .exact.poly import MultiPoly
from .exact.series import DEFAULT_ORDER, TruncSeries, evaluate_at_series, newton_lift
from .quadric import CheckResult, DegenerateNetError, Net, ProjPoint, projective_points

TOTAL_DEGREE = 8


class BaseLocusNotFinite(DegenerateNetError):
    """The three quadrics share a curve or a surface."""


class MultiplicityBoundExceeded(DegenerateNetError):
    """The third quadric vanishes along the branch beyond the truncation order."""


class IncompleteBaseLocus(ValueError):
    """Rational basepoints account for less than the full degree 8."""

    def __init__(self, found, deficit):
        self.found = found
        self.deficit = deficit
        super().__init__(f"rational basepoints account for {TOTAL_DEGREE - deficit} of {TOTAL_DEGREE}; deficit {deficit}")


class Completeness(enum.Enum):
    CERTIFIED = "Certified"
    INCOMPLETE = "Incomplete"


@dataclass(frozen=True)
class BasepointChain:
    """A P^3-basepoint together with the labels of its infinitely near points.

    ``indices`` is the consecutive range of labels, so a basepoint of
    multiplicity 3 labelled first owns ``(1, 2, 3)``.
    """

    point: ProjPoint
    multiplicity: int
    indices: tuple

    @property
    def first(self):
        return self.indices[0]

    @property
    def last(self):
        return self.indices[-1]


@dataclass(frozen=True)
class NetType:
    multiplicities: tuple
    variant: str | None = None

    @property
    def n(self):
        return len(self.multiplicities)

    def __str__(self):
        s = "{" + ",".join(str(m) for m in self.multiplicities) + "}"
        return s + (f"_{self.variant}" if self.variant else "")


@dataclass(frozen=True)
class BaseLocus:
    points: tuple
    multiplicities: tuple
    completeness: Completeness

    @property
    def total(self):
        return sum(self.multiplicities)

    @property
    def certified(self):
        return self.completeness is Completeness.CERTIFIED


# ---------------------------------------------------------------------------
# chart helpers


def _chart_polys(net: Net, chart: int):
    """Dehomogenise in the chart ``x_0 = ... = x_{c-1} = 0, x_c = 1``.

    Returns polynomials in the remaining ``3 - chart`` variables.
    """
    F = net.field
    k = 3 - chart
    names = tuple(net.forms[0].to_poly().names[chart + 1:])
    if k == 0:
        return [MultiPoly.constant(F, 0, f.to_poly().evaluate([0, 0, 0, 1]), ()) for f in net.forms]
    gens = MultiPoly.gens(F, k, names)
    values = [0] * chart + [1] + gens
    return [f.to_poly().substitute(values, k, names) for f in net.forms]


def _local_polys(net: Net, p: ProjPoint):
    """The net in affine coordinates centred at ``p`` (3 variables, origin = p)."""
    F = net.field
    c = p.chart()
    free = [i for i in range(4) if i != c]
    names = tuple("uvw"[k] for k in range(3))
    gens = MultiPoly.gens(F, 3, names)
    values = [None] * 4
    values[c] = MultiPoly.constant(F, 3, 1, names)
    for k, i in enumerate(free):
        values[i] = gens[k] + MultiPoly.constant(F, 3, p[i], names)
    return [f.to_poly().substitute(values, 3, names) for f in net.forms]


def _check_finite(net: Net):
    for chart in range(3):
        polys = _chart_polys(net, chart)
        if quotient_dimension(polys) == INFINITE:
            raise BaseLocusNotFinite("base locus not finite")


def _chart_points(net: Net, chart: int):
    """Rational common zeros in one chart, via eliminants of the quotient algebra."""
    F = net.field
    polys = _chart_polys(net, chart)
    k = 3 - chart
    if k == 0:
        return [] if any(p.terms for p in polys) else [ProjPoint([0, 0, 0, 1], F)]
    alg = QuotientAlgebra(polys)
    if alg.dimension == 0:
        return []
    candidates = []
    for i in range(k):
        roots, _ = roots_in_field(univariate(alg.eliminant(i), F))
        candidates.append(roots)
    out = []
    for combo in product(*candidates):
        if all(not p.evaluate(combo) for p in polys):
            out.append(ProjPoint([0] * chart + [1] + list(combo), F))
    return out


# ---------------------------------------------------------------------------
# public operations


def rational_basepoints(net: Net):
    """All basepoints with coordinates in the ground field, sorted canonically."""
    _check_finite(net)
    F = net.field
    if F.is_finite:
        pts = [p for p in projective_points(F, 3) if net.is_basepoint(p)]
    else:
        pts = [p for chart in range(4) for p in _chart_points(net, chart)]
    return sorted(set(pts), key=lambda p: p.sort_key(), reverse=True)


def find_rational_basepoints(net: Net) -> BaseLocus:
    """Basepoints with their multiplicities and a degree-8 completeness flag.

    Over GF(p) every point of P^3(GF(p)) is tested; over QQ each chart is
    solved through the eliminants of its quotient algebra.  The result is
    Certified exactly when the multiplicities add up to 8.
    """
    pts = rational_basepoints(net)
    mults = tuple(basepoint_multiplicity(net, p) for p in pts)
    done = Completeness.CERTIFIED if sum(mults) == TOTAL_DEGREE else Completeness.INCOMPLETE
    return BaseLocus(tuple(pts), mults, done)


def _smooth_pairs(local):
    """Candidate pairs (F, G, H) with H completing a basis of the net."""
    Q = local
    for i, j in ((0, 1), (0, 2), (1, 2)):
        yield Q[i], Q[j], Q[3 - i - j]
    for i in range(3):
        for j in range(3):
            if i != j:
                yield Q[i], Q[i] + Q[j], Q[3 - i - j]


def _jacobian_at_origin(polys):
    return [[p.diff(v).evaluate([0, 0, 0]) for v in range(3)] for p in polys]


def _branch_orders(net: Net, p: ProjPoint, order: int):
    """Order of vanishing of the third member along the branch cut by each transversal pair."""
    F = net.field
    local = _local_polys(net, p)
    for f, g, h in _smooth_pairs(local):
        J = _jacobian_at_origin([f, g])
        if rank(J, F) < 2:
            continue
        # parameter: a variable whose column can be deleted leaving an invertible minor
        for t in range(3):
            rest = [v for v in range(3) if v != t]
            if rank([[row[v] for v in rest] for row in J], F) == 2:
                break
        branch = newton_lift([f, g], rest, t, [F.zero, F.zero], order)
        values = [None] * 3
        values[t] = TruncSeries.variable(F, order)
        for v, s in zip(rest, branch):
            values[v] = s
        yield evaluate_at_series(h, values).valuation()


def basepoint_multiplicity(net: Net, p: ProjPoint, order: int = DEFAULT_ORDER) -> int:
    """Length of the base-locus scheme at ``p``.

    Two members meeting transversally at ``p`` cut out a smooth branch; the
    branch is expanded as a power series and the third member's order of
    vanishing along it is the multiplicity.
    """
    if not net.is_basepoint(p):
        raise ValueError(f"{p} is not a basepoint")
    for val in _branch_orders(net, p, order):
        if val is None:
            raise MultiplicityBoundExceeded("degenerate: multiplicity bound exceeded")
        return val
    raise DegenerateNetError(f"Assumption 1 fails at {p}: no pair of members meets transversally")


def multiplicities_by_pair(net: Net, p: ProjPoint, order: int = DEFAULT_ORDER):
    """The multiplicity computed from every transversal pair of members (``None`` past ``order``)."""
    if not net.is_basepoint(p):
        raise ValueError(f"{p} is not a basepoint")
    return list(_branch_orders(net, p, order))


def local_multiplicity(net: Net, p: ProjPoint, bound: int = TOTAL_DEGREE + 1) -> int:
    """Independent oracle: ``dim k[u,v,w] / (I_p + m^bound)`` at the point ``p``."""
    return truncated_quotient_dimension(_local_polys(net, p), bound)


def label_chains(points, multiplicities):
    """Assign consecutive index ranges: higher multiplicity first, ties by descending coordinates."""
    order = sorted(zip(points, multiplicities), key=lambda pm: (-pm[1], tuple(-x for x in pm[0].sort_key())))
    chains = []
    nxt = 1
    for pt, m in order:
        chains.append(BasepointChain(pt, m, tuple(range(nxt, nxt + m))))
        nxt += m
    return chains


def net_type(net: Net, locus: BaseLocus | None = None):
    """The type of the net and its labelled basepoint chains."""
    locus = locus or find_rational_basepoints(net)
    if not locus.certified:
        raise IncompleteBaseLocus(locus.points, TOTAL_DEGREE - locus.total)
    chains = label_chains(locus.points, locus.multiplicities)
    return NetType(tuple(c.multiplicity for c in chains)), chains


def nondegeneracy_check(points) -> CheckResult:
    """No three basepoints on a line and no five on a plane."""
    pts = list(points)
    if not pts:
        return CheckResult(True)
    F = pts[0].field
    for trio in combinations(pts, 3):
        if rank([list(p) for p in trio], F) < 3:
            return CheckResult(False, trio, "three collinear basepoints")
    for five in combinations(pts, 5):
        if rank([list(p) for p in five], F) < 4:
            return CheckResult(False, five, "five coplanar basepoints")
    return CheckResult(True)


__all__ = [
    "BaseLocus",
    "BaseLocusNotFinite",
    "BasepointChain",
    "Completeness",
    "IncompleteBaseLocus",
    "MultiplicityBoundExceeded",
    "NetType",
    "TOTAL_DEGREE",
    "basepoint_multiplicity",
    "find_rational_basepoints",
    "label_chains",
    "multiplicities_by_pair",
    "local_multiplicity",
    "nondegeneracy_check",
    "net_type",
    "rational_basepoints",
]
