"""Discriminant quartics of nets and ADE types of their singular points."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .baselocus import Completeness
from .exact.factor import roots_in_field, univariate
from .exact.groebner import INFINITE, QuotientAlgebra, quotient_dimension
from .exact.poly import MultiPoly, power_of_maximal_ideal
from .exact.series import DEFAULT_ORDER, TruncSeries, evaluate_at_series, newton_lift
from .parsing import QUARTIC_NAMES, parse_quartic_poly
from .quadric import DegenerateNetError, Net, ProjPoint
from .roots import DynkinType, canonical, format_types, total_rank

MILNOR_TRUNCATION = 12
MAX_MILNOR = 7


class SingularNetError(DegenerateNetError):
    """Every member of the net is singular (the discriminant vanishes identically)."""


class NonIsolatedSingularities(ValueError):
    """The quartic is non-reduced or has a positive-dimensional singular locus."""


class BeyondADE(ValueError):
    """The germ is not a simple singularity of Milnor number at most 7."""


class PlaneQuartic:
    """A nonzero homogeneous quartic in ``a, b, c`` over QQ or GF(p), p odd."""

    __slots__ = ("poly",)

    def __init__(self, poly: MultiPoly):
        if poly.nvars != 3 or poly.is_zero() or not poly.is_homogeneous(4):
            raise ValueError(f"{poly} is not a nonzero plane quartic")
        if poly.field.characteristic == 2:
            raise ValueError("plane quartics are handled away from characteristic 2")
        self.poly = poly.with_names(QUARTIC_NAMES)

    @classmethod
    def parse(cls, text, field=None):
        from .exact.fields import QQ

        return cls(parse_quartic_poly(text, field or QQ))

    @property
    def field(self):
        return self.poly.field

    def proportional_to(self, other) -> bool:
        """Equality up to a nonzero scalar."""
        p, q = self.poly, other.poly if isinstance(other, PlaneQuartic) else other
        if set(p.terms) != set(q.terms):
            return False
        e = next(iter(p.terms))
        ratio = p.terms[e] / q.terms[e]
        return all(p.terms[m] == ratio * q.terms[m] for m in p.terms)

    def substitute_linear(self, matrix):
        """``q(M lambda)``: the quartic after the linear change of variables ``lambda -> M lambda``."""
        F = self.field
        gens = MultiPoly.gens(F, 3, QUARTIC_NAMES)
        images = []
        for row in matrix:
            img = MultiPoly(F, 3, {}, QUARTIC_NAMES)
            for c, g in zip(row, gens):
                if c:
                    img = img + g.scale(F(c))
            images.append(img)
        return PlaneQuartic(self.poly.substitute(images, 3, QUARTIC_NAMES))

    def __eq__(self, other):
        return isinstance(other, PlaneQuartic) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return str(self.poly)

    __repr__ = __str__


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0] - m[0][0]


def discriminant_quartic(net: Net) -> PlaneQuartic:
    """``det(a Q1 + b Q2 + c Q3)`` with Gram entries ``(1/2) d^2 Q / dx_i dx_j``."""
    F = net.field
    if F.characteristic == 2:
        raise ValueError("the discriminant quartic needs characteristic != 2")
    lam = MultiPoly.gens(F, 3, QUARTIC_NAMES)
    grams = [f.gram_matrix() for f in net.forms]
    M = [[sum((lam[k].scale(grams[k][i][j]) for k in range(3)), MultiPoly(F, 3, {}, QUARTIC_NAMES)) for j in range(4)] for i in range(4)]
    d = _det(M)
    if d.is_zero():
        raise SingularNetError("net of singular quadrics: the discriminant vanishes identically")
    return PlaneQuartic(d)


# ---------------------------------------------------------------------------
# singular points


@dataclass(frozen=True)
class SingularPoints:
    points: tuple
    completeness: Completeness
    unresolved: tuple = ()  # eliminants that do not split, as strings

    @property
    def certified(self):
        return self.completeness is Completeness.CERTIFIED


def _dehomogenise(poly, chart):
    F = poly.field
    k = 2 - chart
    names = QUARTIC_NAMES[chart + 1:]
    gens = MultiPoly.gens(F, k, names) if k else []
    return poly.substitute([0] * chart + [1] + gens, k, names)


def singular_points(q: PlaneQuartic) -> SingularPoints:
    """Rational singular points, Certified when every eliminant splits over the field."""
    F = q.field
    partials = q.poly.gradient()
    points = []
    unresolved = []
    for chart in range(3):
        polys = [_dehomogenise(p, chart) for p in partials]
        if chart == 2:
            if all(p.is_zero() for p in polys):
                points.append(ProjPoint([0, 0, 1], F))
            continue
        if quotient_dimension(polys) == INFINITE:
            raise NonIsolatedSingularities("non-reduced or non-isolated singular locus")
        alg = QuotientAlgebra(polys)
        if alg.dimension == 0:
            continue
        candidates = []
        for i in range(2 - chart):
            elim = univariate(alg.eliminant(i), F, polys[0].names[i])
            roots, splits = roots_in_field(elim)
            if not splits:
                unresolved.append(str(elim))
            candidates.append(roots)
        for combo in product(*candidates):
            if all(not p.evaluate(combo) for p in polys):
                points.append(ProjPoint([0] * chart + [1] + list(combo), F))
    done = Completeness.INCOMPLETE if unresolved else Completeness.CERTIFIED
    pts = sorted(points, key=lambda p: p.sort_key(), reverse=True)
    return SingularPoints(tuple(pts), done, tuple(unresolved))


# ---------------------------------------------------------------------------
# ADE recognition


@dataclass(frozen=True)
class SingularityRecord:
    point: object
    milnor: int
    corank: int
    cubic_shape: str | None
    tag: DynkinType

    def __str__(self):
        return f"{self.tag} at {self.point}"


def milnor_number(g: MultiPoly, truncation: int = MILNOR_TRUNCATION):
    """``dim k[x,y] / (g_x, g_y, m^N)``; exact for simple germs with ``mu < N``."""
    gens = [g.diff(0), g.diff(1)] + power_of_maximal_ideal(g.field, 2, truncation, g.names)
    return quotient_dimension(gens)


def _binary_cubic_discriminant(a, b, c, d):
    return b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def cubic_shape(g3: MultiPoly):
    """``"distinct"``, ``"double"`` or ``"triple"`` root structure of a binary cubic."""
    a, b, c, d = (g3.coefficient(e) for e in ((3, 0), (2, 1), (1, 2), (0, 3)))
    if _binary_cubic_discriminant(a, b, c, d):
        return "distinct"
    # a cube of a linear form has identically vanishing Hessian covariant
    hess = g3.diff(0).diff(0) * g3.diff(1).diff(1) - g3.diff(0).diff(1) ** 2
    return "triple" if hess.is_zero() else "double"


def _series_a_index(g: MultiPoly, order=DEFAULT_ORDER):
    """For a corank-1 germ, ``n`` with the germ of type ``A_n`` via the curve ``g_x = 0``."""
    F = g.field
    q2 = g.homogeneous_part(2)
    A, B, C = q2.coefficient((2, 0)), q2.coefficient((1, 1)), q2.coefficient((0, 2))
    x, y = MultiPoly.gens(F, 2, g.names)
    if not A:
        g = g.substitute([y, x], 2, g.names)
        A, C = C, A
    # complete the square: x -> x - (B / 2A) y leaves the quadratic part A x^2
    shift = B / (2 * A)
    g = g.substitute([x - y.scale(shift), y], 2, g.names)
    (phi,) = newton_lift([g.diff(0)], [0], 1, [F.zero], order)
    val = evaluate_at_series(g, [phi, TruncSeries.variable(F, order)]).valuation()
    if val is None:
        raise BeyondADE("restriction vanishes beyond the truncation order")
    return val - 1


def classify_germ(g: MultiPoly, point=None) -> SingularityRecord:
    """ADE type of a plane-curve germ at the origin of ``k[x, y]``."""
    F = g.field
    if F.characteristic == 2:
        raise ValueError("ADE recognition needs characteristic != 2")
    if g.evaluate([0, 0]) or any(d.evaluate([0, 0]) for d in g.gradient()):
        raise ValueError("the origin is not a singular point of the germ")
    mu = milnor_number(g)
    if mu > MAX_MILNOR:
        raise BeyondADE(f"Milnor number {mu} exceeds {MAX_MILNOR}")
    q2 = g.homogeneous_part(2)
    if not q2.is_zero():
        A, B, C = q2.coefficient((2, 0)), q2.coefficient((1, 1)), q2.coefficient((0, 2))
        if B * B - 4 * A * C:
            if mu != 1:
                raise AssertionError(f"nondegenerate Hessian but mu = {mu}")
            return SingularityRecord(point, 1, 0, None, DynkinType("A", 1))
        n = _series_a_index(g)
        if n != mu:
            raise AssertionError(f"series route gives A{n} but the Milnor number is {mu}")
        return SingularityRecord(point, mu, 1, None, DynkinType("A", mu))
    g3 = g.homogeneous_part(3)
    if g3.is_zero():
        raise BeyondADE("vanishing cubic part")
    shape = cubic_shape(g3)
    if shape == "distinct":
        tag = DynkinType("D", 4)
        if mu != 4:
            raise AssertionError(f"three distinct tangents but mu = {mu}")
    elif shape == "double":
        tag = DynkinType("D", mu)
    else:
        if mu not in (6, 7):
            raise BeyondADE(f"triple tangent with mu = {mu}")
        tag = DynkinType("E", mu)
    return SingularityRecord(point, mu, 2, shape, tag)


def local_germ(q: PlaneQuartic, p: ProjPoint) -> MultiPoly:
    """``q`` in affine coordinates centred at ``p``."""
    F = q.field
    c = p.chart()
    names = ("x", "y")
    x, y = MultiPoly.gens(F, 2, names)
    free = [i for i in range(3) if i != c]
    values = [None] * 3
    values[c] = MultiPoly.constant(F, 2, 1, names)
    for g, i in zip((x, y), free):
        values[i] = g + MultiPoly.constant(F, 2, p[i], names)
    return q.poly.substitute(values, 2, names)


def classify_ade(q: PlaneQuartic, p: ProjPoint) -> SingularityRecord:
    return classify_germ(local_germ(q, p), p)


@dataclass(frozen=True)
class QuarticRootSystem:
    records: tuple
    types: tuple

    @property
    def rank(self):
        return total_rank(self.types)

    def __str__(self):
        return format_types(self.types, empty="smooth")


class IncompleteSingularities(ValueError):
    pass


def quartic_root_system(q: PlaneQuartic) -> QuarticRootSystem:
    sp = singular_points(q)
    if not sp.certified:
        raise IncompleteSingularities("singular points not certified; unsplit eliminants: " + "; ".join(sp.unresolved))
    records = tuple(classify_ade(q, p) for p in sp.points)
    return QuarticRootSystem(records, canonical(r.tag for r in records))


__all__ = [
    "BeyondADE",
    "IncompleteSingularities",
    "NonIsolatedSingularities",
    "PlaneQuartic",
    "QuarticRootSystem",
    "SingularNetError",
    "SingularPoints",
    "SingularityRecord",
    "classify_ade",
    "classify_germ",
    "cubic_shape",
    "discriminant_quartic",
    "local_germ",
    "milnor_number",
    "quartic_root_system",
    "singular_points",
]
