"""Quadratic forms on P^3, nets of quadrics, and projective points.

Forms are stored as upper-triangular coefficient tables (``a_ij`` is the
coefficient of ``x_i x_j`` for ``i <= j``), so nothing is ever divided by 2 and
characteristic 2 works like every other characteristic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exact.fields import QQ, FieldMismatchError
from .exact.linalg import nullspace, rank, solve
from .exact.poly import MultiPoly
from .parsing import NET_NAMES, parse_quadric_poly

PAIRS = [(i, j) for i in range(4) for j in range(i, 4)]


class DegenerateNetError(ValueError):
    """The input violates a standing hypothesis (dependent forms, Assumption 1, ...)."""


# ---------------------------------------------------------------------------
# points


class ProjPoint:
    """A point of projective space, normalised so its first nonzero coordinate is 1."""

    __slots__ = ("coords", "field")

    def __init__(self, coords, field=QQ):
        cs = [field(c) for c in coords]
        lead = next((c for c in cs if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        inv = field.one / lead
        self.coords = tuple(c * inv for c in cs)
        self.field = field

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def sort_key(self):
        return tuple(c if self.field == QQ else int(c) for c in self.coords)

    def chart(self):
        """Index of the first nonzero coordinate."""
        return next(i for i, c in enumerate(self.coords) if c)

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coords) + "]"

    __repr__ = __str__


def projective_points(field, dim):
    """All points of P^dim over a finite field, in a fixed order."""
    if not field.is_finite:
        raise ValueError("only finite fields can be enumerated")
    els = field.elements()
    out = []
    for lead in range(dim + 1):
        for tail in product(els, repeat=dim - lead):
            out.append(ProjPoint([0] * lead + [1] + list(tail), field))
    return out


# ---------------------------------------------------------------------------
# quadratic forms


class QuadraticForm:
    """``sum_{i<=j} a_ij x_i x_j`` in the variables X, Y, Z, W."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs, field=QQ):
        self.field = field
        self.coeffs = {}
        for (i, j), c in dict(coeffs).items():
            key = (min(i, j), max(i, j))
            c = field(c)
            if c:
                self.coeffs[key] = self.coeffs.get(key, field.zero) + c
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    @classmethod
    def from_poly(cls, poly: MultiPoly):
        if poly.nvars != 4 or not (poly.is_zero() or poly.is_homogeneous(2)):
            raise ValueError(f"{poly} is not a quadratic form in 4 variables")
        coeffs = {}
        for e, c in poly.terms.items():
            idx = [i for i in range(4) for _ in range(e[i])]
            coeffs[(idx[0], idx[1])] = c
        return cls(coeffs, poly.field)

    @classmethod
    def parse(cls, text, field=QQ, line=None):
        return cls.from_poly(parse_quadric_poly(text, field, line))

    def to_poly(self):
        terms = {}
        for (i, j), c in self.coeffs.items():
            e = [0] * 4
            e[i] += 1
            e[j] += 1
            terms[tuple(e)] = c
        return MultiPoly(self.field, 4, terms, NET_NAMES)

    def coefficient(self, i, j):
        return self.coeffs.get((min(i, j), max(i, j)), self.field.zero)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if other.field != self.field:
            raise FieldMismatchError("forms over different fields")
        c = dict(self.coeffs)
        for k, v in other.coeffs.items():
            c[k] = c.get(k, self.field.zero) + v
        return QuadraticForm(c, self.field)

    def scale(self, s):
        s = self.field(s)
        return QuadraticForm({k: v * s for k, v in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, QuadraticForm) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0])))

    def vector(self):
        """The 10 coefficients in the fixed order of :data:`PAIRS`."""
        return [self.coefficient(i, j) for i, j in PAIRS]

    def polar_matrix(self):
        """Matrix of ``b(u, v) = q(u+v) - q(u) - q(v)``: diagonal ``2 a_ii``, off-diagonal ``a_ij``."""
        return [[self.coefficient(i, j) * (2 if i == j else 1) for j in range(4)] for i in range(4)]

    def gram_matrix(self):
        """Symmetric matrix ``G`` with ``q(x) = x^T G x``; needs characteristic != 2."""
        if self.field.characteristic == 2:
            raise ValueError("the Gram matrix needs division by 2")
        half = self.field.one / self.field(2)
        return [[x * half for x in row] for row in self.polar_matrix()]

    def rank(self):
        """Rank of the polar form (characteristic != 2)."""
        if self.field.characteristic == 2:
            raise ValueError("use factor_into_planes in characteristic 2")
        return rank(self.polar_matrix(), self.field)

    def evaluate(self, p):
        coords = p.coords if isinstance(p, ProjPoint) else [self.field(x) for x in p]
        self._check_point(p)
        total = self.field.zero
        for (i, j), c in self.coeffs.items():
            total = total + c * coords[i] * coords[j]
        return total

    def gradient(self, p):
        """Formal partial derivatives at ``p`` (valid in every characteristic)."""
        self._check_point(p)
        coords = list(p)
        M = self.polar_matrix()
        return [sum((M[i][j] * coords[j] for j in range(4)), self.field.zero) for i in range(4)]

    def _check_point(self, p):
        if isinstance(p, ProjPoint) and p.field != self.field:
            raise FieldMismatchError(f"point over {p.field}, form over {self.field}")

    def to_field(self, field):
        return QuadraticForm.from_poly(self.to_poly().to_field(field))

    def __str__(self):
        return str(self.to_poly())

    __repr__ = __str__


def linear_form_str(coeffs, field=QQ):
    return str(MultiPoly(field, 4, {tuple(int(i == k) for i in range(4)): c for k, c in enumerate(coeffs)}, NET_NAMES))


# ---------------------------------------------------------------------------
# singular loci and factorisation


def singular_locus(q: QuadraticForm):
    """Basis of the singular subspace of ``q`` (an empty list means smooth).

    Away from characteristic 2 this is the kernel of the polar form.  In
    characteristic 2 the partials cut out the kernel ``K`` of the (alternating)
    polar form, and on ``K`` the form is additive with ``q(c v) = c^2 q(v)``;
    over GF(2) squaring is the identity, so ``q = 0`` is a linear condition on
    ``K`` and the locus is again a subspace.
    """
    if q.is_zero():
        raise ValueError("the zero form has no singular locus")
    F = q.field
    K = nullspace(q.polar_matrix(), F, 4)
    if F.characteristic != 2:
        return K
    values = [q.evaluate(v) for v in K]
    if not any(values):
        return K
    coeffs = nullspace([values], F, len(K))
    return [[sum((c[k] * K[k][i] for k in range(len(K))), F.zero) for i in range(4)] for c in coeffs]


class PlaneKind(enum.Enum):
    IRREDUCIBLE = "Irreducible"
    DOUBLE_PLANE = "DoublePlane"
    TWO_PLANES = "TwoPlanes"


@dataclass(frozen=True)
class PlaneDecomposition:
    """Result of :func:`factor_into_planes`.

    ``planes`` holds linear forms as coefficient 4-tuples; ``scalar`` is the
    constant with ``q = scalar * prod(planes)`` (the single plane is squared for
    a double plane).  ``splits_over_extension`` marks forms that are a product
    of two distinct planes only over an extension of the ground field.
    """

    kind: PlaneKind
    planes: tuple = ()
    scalar: object = None
    splits_over_extension: bool = False

    @property
    def geometric_rank2(self):
        return self.kind is PlaneKind.TWO_PLANES or self.splits_over_extension


def _normalise_linear(v, F):
    lead = next(c for c in v if c)
    inv = F.one / lead
    return tuple(c * inv for c in v), lead


def _linear_poly(v, F):
    return MultiPoly(F, 4, {tuple(int(i == k) for i in range(4)): c for k, c in enumerate(v)}, NET_NAMES)


def _sqrt_in_field(a, F):
    """A square root of ``a`` in ``F``, or ``None``."""
    if not a:
        return F.zero
    if F == QQ:
        a = Fraction(a)
        if a < 0:
            return None
        from math import isqrt

        n, d = isqrt(a.numerator), isqrt(a.denominator)
        return Fraction(n, d) if n * n == a.numerator and d * d == a.denominator else None
    return next((x for x in F.elements() if x * x == a), None)


def _finish(q, planes, kind, flag=False):
    """Normalise the planes and recover the scalar by comparing with ``q``."""
    F = q.field
    normed = [_normalise_linear(v, F)[0] for v in planes]
    if kind is PlaneKind.DOUBLE_PLANE:
        normed = [normed[0], normed[0]]
    prod_poly = _linear_poly(normed[0], F) * _linear_poly(normed[1], F)
    qp = q.to_poly()
    e, c = prod_poly.leading_term()
    scalar = qp.coefficient(e) / c
    assert prod_poly.scale(scalar) == qp, "plane factorisation does not reproduce the form"
    shown = tuple(normed[:1]) if kind is PlaneKind.DOUBLE_PLANE else tuple(sorted(normed, key=lambda v: tuple(int(x) if F != QQ else x for x in v), reverse=True))
    return PlaneDecomposition(kind, shown, scalar, flag)


def factor_into_planes(q: QuadraticForm) -> PlaneDecomposition:
    """Decide whether ``q`` is a double plane, a product of two planes, or neither."""
    if q.is_zero():
        raise ValueError("cannot factor the zero form")
    F = q.field
    if F.characteristic == 2:
        return _factor_char2(q)
    M = q.polar_matrix()
    r = rank(M, F)
    if r >= 3:
        return PlaneDecomposition(PlaneKind.IRREDUCIBLE)
    if r == 1:
        row = next(row for row in M if any(row))
        return _finish(q, [row], PlaneKind.DOUBLE_PLANE)
    # rank 2: q only depends on the class of x modulo the kernel
    K = nullspace(M, F, 4)
    basis = [list(v) for v in K]
    comp = []
    for i in range(4):
        e = [F.one if k == i else F.zero for k in range(4)]
        if rank(basis + comp + [e], F) > len(basis) + len(comp):
            comp.append(e)
        if len(comp) == 2:
            break
    u, v = comp
    alpha, gamma = q.evaluate(u), q.evaluate(v)
    beta = q.evaluate([a + b for a, b in zip(u, v)]) - alpha - gamma
    disc = beta * beta - 4 * alpha * gamma
    root = _sqrt_in_field(disc, F)
    if root is None:
        return PlaneDecomposition(PlaneKind.IRREDUCIBLE, splits_over_extension=True)
    # coordinate functionals s(x), t(x) dual to (u, v, k1, k2)
    P = [list(col) for col in zip(u, v, *basis)]  # columns u, v, k1, k2
    s_fun = _dual_row(P, 0, F)
    t_fun = _dual_row(P, 1, F)
    if alpha:
        # alpha s^2 + beta s t + gamma t^2 = alpha (s - r1 t)(s - r2 t)
        two_a = 2 * alpha
        roots = [(-beta + root) / two_a, (-beta - root) / two_a]
        planes = [[s - r0 * t for s, t in zip(s_fun, t_fun)] for r0 in roots]
    else:
        planes = [list(t_fun), [beta * s + gamma * t for s, t in zip(s_fun, t_fun)]]
    return _finish(q, planes, PlaneKind.TWO_PLANES)


def _dual_row(P, k, F):
    """Row ``k`` of ``P^{-1}``: the functional picking the k-th coordinate in the column basis of ``P``."""
    e = [F.one if i == k else F.zero for i in range(4)]
    PT = [list(r) for r in zip(*P)]
    return solve(PT, e, F)


def _factor_char2(q):
    F = q.field
    if all(i == j for i, j in q.coeffs):
        # sum a_ii x_i^2 = (sum a_ii x_i)^2 since squaring is the identity on GF(2)
        return _finish(q, [[q.coefficient(i, i) for i in range(4)]], PlaneKind.DOUBLE_PLANE)
    qp = q.to_poly()
    planes = projective_points(F, 3)
    for a, L in enumerate(planes):
        lp = _linear_poly(L.coords, F)
        for M in planes[a + 1:]:
            if lp * _linear_poly(M.coords, F) == qp:
                return _finish(q, [L.coords, M.coords], PlaneKind.TWO_PLANES)
    flag = len(singular_locus(q)) == 2
    return PlaneDecomposition(PlaneKind.IRREDUCIBLE, splits_over_extension=flag)


# ---------------------------------------------------------------------------
# nets


class Net:
    """An ordered basis ``(Q1, Q2, Q3)`` of three linearly independent quadrics."""

    __slots__ = ("forms", "field")

    def __init__(self, forms, field=None):
        forms = list(forms)
        if len(forms) != 3:
            raise ValueError("a net needs exactly three forms")
        field = field or forms[0].field
        for f in forms:
            if f.field != field:
                raise FieldMismatchError("net members over different fields")
            if f.is_zero():
                raise DegenerateNetError("the zero form cannot be a net member")
        if rank([f.vector() for f in forms], field) < 3:
            raise DegenerateNetError("the three forms are linearly dependent")
        self.forms = tuple(forms)
        self.field = field

    @classmethod
    def parse(cls, texts, field=QQ):
        return cls([QuadraticForm.parse(t, field) for t in texts], field)

    def member(self, lam):
        lam = [self.field(x) for x in lam]
        total = QuadraticForm({}, self.field)
        for c, f in zip(lam, self.forms):
            if c:
                total = total + f.scale(c)
        return total

    def is_basepoint(self, p):
        return all(not f.evaluate(p) for f in self.forms)

    def to_field(self, field):
        return Net([f.to_field(field) for f in self.forms], field)

    def polys(self):
        return [f.to_poly() for f in self.forms]

    def __iter__(self):
        return iter(self.forms)

    def __str__(self):
        return "<" + ", ".join(str(f) for f in self.forms) + ">"

    __repr__ = __str__


class SingularMemberKind(enum.Enum):
    NONE = "None"
    UNIQUE = "Unique"
    VIOLATION = "Violation"


@dataclass(frozen=True)
class SingularMember:
    kind: SingularMemberKind
    lam: ProjPoint | None = None


def singular_member_at(net: Net, p: ProjPoint) -> SingularMember:
    """The members of ``net`` singular at the basepoint ``p``.

    Solves ``sum lam_k grad Q_k(p) = 0``; since ``p`` lies on every member the
    vanishing condition needed in characteristic 2 holds automatically.
    """
    if not net.is_basepoint(p):
        raise ValueError(f"{p} is not a basepoint of the net")
    F = net.field
    grads = [f.gradient(p) for f in net.forms]
    rows = [[grads[k][i] for k in range(3)] for i in range(4)]
    K = nullspace(rows, F, 3)
    if not K:
        return SingularMember(SingularMemberKind.NONE)
    if len(K) == 1:
        return SingularMember(SingularMemberKind.UNIQUE, ProjPoint(K[0], F))
    return SingularMember(SingularMemberKind.VIOLATION)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: object = None
    message: str = ""

    def __bool__(self):
        return self.passed


def assumption1_check(net: Net, basepoints) -> CheckResult:
    """At most one member of the net is singular at each basepoint."""
    for p in basepoints:
        if singular_member_at(net, p).kind is SingularMemberKind.VIOLATION:
            return CheckResult(False, p, f"Assumption 1 fails at {p}")
    return CheckResult(True)


def gradients_rank(net: Net, p: ProjPoint):
    return rank([f.gradient(p) for f in net.forms], net.field)


__all__ = [
    "ProjPoint",
    "QuadraticForm",
    "Net",
    "PlaneKind",
    "PlaneDecomposition",
    "SingularMember",
    "SingularMemberKind",
    "CheckResult",
    "DegenerateNetError",
    "singular_locus",
    "factor_into_planes",
    "singular_member_at",
    "assumption1_check",
    "projective_points",
    "linear_form_str",
    "gradients_rank",
]
