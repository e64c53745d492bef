"""The lattice Z^9 = <h, e1..e8> of the blown-up P^3 and configuration graphs of vertical classes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact.fields import QQ
from .exact.linalg import nullspace, determinant, solve
from .exact.smith import AbelianGroup, cokernel
from .roots import DynkinDiagram, format_types, recognize

N_POINTS = 8


class ConfigurationError(ValueError):
    """A list of classes does not define a valid configuration graph."""


class NotAffineError(ConfigurationError):
    pass


@dataclass(frozen=True)
class DivisorClass:
    """Integer coefficients of ``(h, e1, ..., e8)``."""

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != N_POINTS + 1:
            raise ValueError("a divisor class has 9 coefficients")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls):
        return cls((0,) * 9)

    @classmethod
    def h(cls):
        return cls((1,) + (0,) * 8)

    @classmethod
    def e(cls, i):
        c = [0] * 9
        c[i] = 1
        return cls(tuple(c))

    @classmethod
    def h_minus(cls, indices):
        """``h - e_i - e_j - e_k - e_l`` (the class of a plane through four points)."""
        c = [1] + [0] * 8
        for i in indices:
            c[i] -= 1
        return cls(tuple(c))

    @classmethod
    def e_diff(cls, i, j):
        return cls.e(i) - cls.e(j)

    @classmethod
    def anti_half_canonical(cls):
        """``-K/2 = 2h - e1 - ... - e8``."""
        return cls((2,) + (-1,) * 8)

    def __add__(self, other):
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, k):
        return DivisorClass(tuple(k * a for a in self.coeffs))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            name = "h" if i == 0 else f"e{i}"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(("- " if c < 0 else "+ ") + mag + name)
        s = " ".join(parts) or "0"
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


H = DivisorClass.h()
ANTI_HALF_K = DivisorClass.anti_half_canonical()


def triple_product(d1: DivisorClass, d2: DivisorClass, d3: DivisorClass) -> int:
    """``h^3 = 1``, ``e_i^3 = 1``, every mixed monomial 0."""
    a, b, c = d1.coeffs, d2.coeffs, d3.coeffs
    return sum(a[i] * b[i] * c[i] for i in range(9))


def form(d1: DivisorClass, d2: DivisorClass) -> int:
    """The bilinear form ``D1 . D2 = D1 o D2 o (-K/2)``."""
    return triple_product(d1, d2, ANTI_HALF_K)


def _indices(chain):
    return tuple(chain.indices if hasattr(chain, "indices") else chain)


def chains_from_type(multiplicities):
    """Consecutive index ranges for a type, e.g. ``(4, 2, 2) -> [(1..4), (5, 6), (7, 8)]``."""
    out, nxt = [], 1
    for m in multiplicities:
        out.append(tuple(range(nxt, nxt + m)))
        nxt += m
    if nxt != N_POINTS + 1:
        raise ValueError(f"multiplicities {tuple(multiplicities)} do not sum to 8")
    return out


def cone_class(chains, i) -> DivisorClass:
    """``2h - 2e_i - sum_{k != i, j} e_k`` for the cone with vertex ``p_i``.

    ``j`` is the last index of the chain starting at ``i``; for a chain of
    length one nothing besides ``i`` is excluded.
    """
    chain = next((_indices(c) for c in chains if _indices(c)[0] == i), None)
    if chain is None:
        raise ValueError(f"no basepoint chain starts at index {i}")
    j = chain[-1]
    c = [2] + [-1] * 8
    c[i] = -2
    if j != i:
        c[j] = 0
    return DivisorClass(tuple(c))


_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def parse_class(label: str, chains=None) -> DivisorClass:
    """Parse ``h``, ``h1234``, ``e3``, ``e12``, ``c5`` (needs ``chains``) or ``-K/2``."""
    t = label.strip().translate(_SUBSCRIPTS).replace("_", "").replace(" ", "").replace("−", "-")
    if t in ("-K/2", "-1/2K", "-(1/2)K", "-½K"):
        return ANTI_HALF_K
    if t == "h":
        return H
    m = re.fullmatch(r"([hec])([1-8]+)", t)
    if not m:
        raise ValueError(f"cannot parse divisor class {label!r}")
    kind, digits = m.group(1), [int(d) for d in m.group(2)]
    if kind == "h" and len(digits) == 4 and len(set(digits)) == 4:
        return DivisorClass.h_minus(digits)
    if kind == "e" and len(digits) == 1:
        return DivisorClass.e(digits[0])
    if kind == "e" and len(digits) == 2 and digits[0] != digits[1]:
        return DivisorClass.e_diff(*digits)
    if kind == "c" and len(digits) == 1:
        if chains is None:
            raise ValueError(f"cone class {label!r} needs the basepoint chains")
        return cone_class(chains, digits[0])
    raise ValueError(f"cannot parse divisor class {label!r}")


# ---------------------------------------------------------------------------
# configuration graphs


@dataclass(frozen=True)
class ConfigGraph:
    labels: tuple
    classes: tuple
    edges: tuple  # ((i, j, weight), ...), i < j
    components: tuple  # tuples of node indices

    def diagram(self):
        return DynkinDiagram.build(len(self.labels), {(i, j): w for i, j, w in self.edges})

    def weight(self, i, j):
        return self.diagram().weight(i, j)

    def types(self):
        """Recognised (affine) types of the components, or ``None``."""
        return recognize(self.diagram())

    def type_string(self, pretty=False):
        t = self.types()
        return "unrecognised" if t is None else format_types(t, pretty)

    def labelled_edges(self):
        return [(self.labels[i], self.labels[j], w) for i, j, w in self.edges]


def build_config_graph(nodes) -> ConfigGraph:
    """Edges weighted by the form; every node must be a root orthogonal to ``-K/2``."""
    nodes = list(nodes)
    labels = tuple(str(lbl) for lbl, _ in nodes)
    classes = tuple(c for _, c in nodes)
    for lbl, c in nodes:
        if form(c, c) != -2 or form(c, ANTI_HALF_K) != 0:
            raise ConfigurationError(
                f"{lbl} = {c} is not a root of K-perp (self-form {form(c, c)}, form with -K/2 {form(c, ANTI_HALF_K)})"
            )
    edges = []
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            v = form(classes[i], classes[j])
            if v not in (0, 1, 2):
                raise ConfigurationError(f"{labels[i]} . {labels[j]} = {v} is not in {{0, 1, 2}}")
            if v:
                edges.append((i, j, v))
    d = DynkinDiagram.build(len(nodes), {(i, j): w for i, j, w in edges})
    return ConfigGraph(labels, classes, tuple(edges), tuple(tuple(c) for c in d.components()))


@dataclass(frozen=True)
class FiberSumCheck:
    component: tuple  # labels
    marks: tuple
    passed: bool
    message: str = ""


def _primitive_positive(v):
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints and ints[0] < 0:
        ints = [-x for x in ints]
    return ints


def affine_marks(gram):
    """Primitive positive null vector of an affine Gram matrix (diagonal -2)."""
    n = len(gram)
    K = nullspace(gram, QQ, n)
    if len(K) != 1:
        raise NotAffineError(f"Gram matrix has nullity {len(K)}, expected 1")
    marks = _primitive_positive(K[0])
    if any(m <= 0 for m in marks):
        raise NotAffineError("null vector is not strictly positive")
    # -G restricted to all but one node must be positive definite
    sub = [[-gram[i][j] for j in range(1, n)] for i in range(1, n)]
    for k in range(1, n):
        if determinant([row[:k] for row in sub[:k]], QQ) <= 0:
            raise NotAffineError("Gram matrix is not negative semi-definite")
    return tuple(marks)


def verify_fiber_sums(graph: ConfigGraph):
    """Per component: the mark-weighted sum of its classes must be ``-K/2``."""
    out = []
    for comp in graph.components:
        classes = [graph.classes[i] for i in comp]
        gram = [[form(a, b) for b in classes] for a in classes]
        labels = tuple(graph.labels[i] for i in comp)
        marks = affine_marks(gram)
        total = DivisorClass.zero()
        for m, c in zip(marks, classes):
            total = total + m * c
        ok = total == ANTI_HALF_K
        out.append(FiberSumCheck(labels, marks, ok, "" if ok else f"sum is {total}, expected -K/2"))
    return out


K_PERP_BASIS_LABELS = ("h1234",) + tuple(f"e{i}{i + 1}" for i in range(1, 8))


def k_perp_basis():
    return [parse_class(lbl) for lbl in K_PERP_BASIS_LABELS]


def k_perp_coordinates(d: DivisorClass):
    """Coordinates of ``d`` in the basis ``(h1234, e12, ..., e78)`` of ``K-perp``."""
    if form(d, ANTI_HALF_K) != 0:
        raise ValueError(f"{d} is not orthogonal to -K/2")
    B = k_perp_basis()
    rows = [[b.coeffs[r] for b in B] for r in range(9)]
    x = solve(rows, list(d.coeffs), QQ)
    if x is None or any(Fraction(v).denominator != 1 for v in x):
        raise ValueError(f"{d} is not an integral combination of the K-perp basis")
    return [int(v) for v in x]


def mw_group_from_config(nodes) -> AbelianGroup:
    """``K-perp / span(nodes, -K/2)`` via Smith normal form."""
    classes = [n[1] if isinstance(n, tuple) else n for n in nodes]
    cols = [k_perp_coordinates(c) for c in classes + [ANTI_HALF_K]]
    matrix = [[col[r] for col in cols] for r in range(8)]
    return cokernel(matrix, 8)


__all__ = [
    "ANTI_HALF_K",
    "ConfigGraph",
    "ConfigurationError",
    "DivisorClass",
    "FiberSumCheck",
    "H",
    "K_PERP_BASIS_LABELS",
    "NotAffineError",
    "affine_marks",
    "build_config_graph",
    "chains_from_type",
    "cone_class",
    "form",
    "k_perp_basis",
    "k_perp_coordinates",
    "mw_group_from_config",
    "parse_class",
    "triple_product",
    "verify_fiber_sums",
]
