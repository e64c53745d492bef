"""Simply-laced Dynkin diagrams, affine extensions, and finite-index subsystems of E7."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .exact.smith import AbelianGroup, cokernel

FAMILY_ORDER = "EDA"
TILDE = "̃"


@dataclass(frozen=True)
class DynkinType:
    """A connected simply-laced type such as ``A7`` or the affine ``~E7``."""

    family: str
    rank: int
    affine: bool = False

    def __post_init__(self):
        ok = {
            "A": self.rank >= 1,
            "D": self.rank >= 4,
            "E": self.rank in (6, 7, 8),
        }.get(self.family, False)
        if not ok:
            raise ValueError(f"no simply-laced type {self.family}{self.rank}")

    @property
    def nodes(self):
        return self.rank + 1 if self.affine else self.rank

    def finite(self):
        return DynkinType(self.family, self.rank, False)

    def sort_key(self):
        return (FAMILY_ORDER.index(self.family), -self.rank, self.affine)

    def __str__(self):
        return ("~" if self.affine else "") + f"{self.family}{self.rank}"

    def pretty(self):
        return f"{self.family}{TILDE if self.affine else ''}{self.rank}"


def canonical(types):
    return tuple(sorted(types, key=DynkinType.sort_key))


def format_types(types, pretty=False, empty="0"):
    """``[A3, A3, A1] -> "2A3+A1"``; components sorted E, D, A and by decreasing rank."""
    types = canonical(types)
    if not types:
        return empty
    parts = []
    i = 0
    while i < len(types):
        j = i
        while j < len(types) and types[j] == types[i]:
            j += 1
        name = types[i].pretty() if pretty else str(types[i])
        parts.append(name if j - i == 1 else f"{j - i}{name}")
        i = j
    return "+".join(parts)


_TOKEN = re.compile(r"^(\d*)(~?)([ADE])(~?)(\d+)(~?)$")


def parse_types(text):
    """Parse ``"2A3+A1"``, ``"D6+A1"``, ``"~D4+3~A1"`` or the tilde-accented forms."""
    norm = unicodedata.normalize("NFD", text).replace("⊕", "+").replace(" ", "")
    if norm in ("", "0"):
        return ()
    out = []
    for tok in norm.split("+"):
        tok = tok.replace(TILDE, "~")
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse Dynkin type {tok!r} in {text!r}")
        count = int(m.group(1) or 1)
        affine = bool(m.group(2) or m.group(4) or m.group(6))
        out += [DynkinType(m.group(3), int(m.group(5)), affine)] * count
    return canonical(out)


def total_rank(types):
    return sum(t.rank for t in types)


# ---------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class DynkinDiagram:
    """Nodes ``0..n-1`` with weighted undirected edges ``{(i, j): w}``, ``i < j``."""

    size: int
    edges: tuple  # sorted ((i, j, w), ...)

    @classmethod
    def build(cls, size, edges):
        clean = {}
        for (i, j), w in dict(edges).items():
            if i == j:
                raise ValueError("loops are not allowed")
            if w:
                clean[(min(i, j), max(i, j))] = w
        return cls(size, tuple(sorted((i, j, w) for (i, j), w in clean.items())))

    def weight(self, i, j):
        a, b = min(i, j), max(i, j)
        return next((w for x, y, w in self.edges if (x, y) == (a, b)), 0)

    def neighbours(self, i):
        return [y if x == i else x for x, y, _ in self.edges if i in (x, y)]

    def components(self):
        seen = set()
        comps = []
        for s in range(self.size):
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.neighbours(v):
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def subdiagram(self, nodes):
        idx = {v: k for k, v in enumerate(nodes)}
        return DynkinDiagram.build(
            len(nodes), {(idx[x], idx[y]): w for x, y, w in self.edges if x in idx and y in idx}
        )


def standard_diagram(t: DynkinType) -> DynkinDiagram:
    n = t.rank
    path = lambda k: {(i, i + 1): 1 for i in range(k - 1)}  # noqa: E731
    if t.family == "A":
        if not t.affine:
            return DynkinDiagram.build(n, path(n))
        if n == 1:
            return DynkinDiagram.build(2, {(0, 1): 2})
        e = path(n + 1)
        e[(0, n)] = 1
        return DynkinDiagram.build(n + 1, e)
    if t.family == "D":
        e = path(n - 1)
        e[(n - 3, n - 1)] = 1
        if t.affine:
            e[(1, n)] = 1
            return DynkinDiagram.build(n + 1, e)
        return DynkinDiagram.build(n, e)
    if not t.affine:
        e = path(n - 1)
        e[(2, n - 1)] = 1
        return DynkinDiagram.build(n, e)
    if n == 6:
        e = path(5)
        e[(2, 5)] = 1
        e[(5, 6)] = 1
        return DynkinDiagram.build(7, e)
    if n == 7:
        e = path(7)
        e[(3, 7)] = 1
        return DynkinDiagram.build(8, e)
    e = path(8)
    e[(2, 8)] = 1
    return DynkinDiagram.build(9, e)


def diagram_of_sum(types) -> DynkinDiagram:
    edges = {}
    offset = 0
    for t in types:
        d = standard_diagram(t)
        for i, j, w in d.edges:
            edges[(i + offset, j + offset)] = w
        offset += d.size
    return DynkinDiagram.build(offset, edges)


def _arm_lengths(d: DynkinDiagram, centre):
    arms = []
    for start in d.neighbours(centre):
        length, prev, cur = 1, centre, start
        while True:
            nxt = [u for u in d.neighbours(cur) if u != prev]
            if len(nxt) != 1:
                if nxt:
                    return None  # another branch point on this arm
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


_TREE_TYPES = {
    (1, 2, 2): DynkinType("E", 6),
    (1, 2, 3): DynkinType("E", 7),
    (1, 2, 4): DynkinType("E", 8),
    (2, 2, 2): DynkinType("E", 6, True),
    (1, 3, 3): DynkinType("E", 7, True),
    (1, 2, 5): DynkinType("E", 8, True),
}


def recognize_connected(d: DynkinDiagram):
    """Type of a connected diagram, or ``None`` when it is not a simply-laced (affine) Dynkin diagram."""
    k = d.size
    if k == 1:
        return DynkinType("A", 1)
    weights = [w for _, _, w in d.edges]
    if any(w not in (1, 2) for w in weights):
        return None
    if 2 in weights:
        return DynkinType("A", 1, True) if k == 2 and weights == [2] else None
    deg = [len(d.neighbours(i)) for i in range(k)]
    m = len(d.edges)
    if m == k:
        return DynkinType("A", k - 1, True) if k >= 3 and all(x == 2 for x in deg) else None
    if m != k - 1:
        return None
    branch = [i for i in range(k) if deg[i] >= 3]
    if not branch:
        return DynkinType("A", k)
    if len(branch) == 1:
        c = branch[0]
        if deg[c] == 4:
            return DynkinType("D", 4, True) if k == 5 else None
        if deg[c] > 4:
            return None
        arms = tuple(_arm_lengths(d, c))
        if arms[0] == 1 and arms[1] == 1:
            return DynkinType("D", k)
        return _TREE_TYPES.get(arms)
    if len(branch) == 2 and all(deg[b] == 3 for b in branch):
        for b in branch:
            leaves = [u for u in d.neighbours(b) if deg[u] == 1]
            if len(leaves) != 2:
                return None
        return DynkinType("D", k - 1, True)
    return None


def recognize(d: DynkinDiagram):
    """Per-component types (canonically sorted), or ``None`` if some component is unrecognised."""
    out = []
    for comp in d.components():
        t = recognize_connected(d.subdiagram(comp))
        if t is None:
            return None
        out.append(t)
    return canonical(out)


def _component_extensions(t: DynkinType):
    base = standard_diagram(t)
    k = base.size
    found = set()
    old = {(i, j): w for i, j, w in base.edges}
    for ws in product((0, 1, 2), repeat=k):
        if not any(ws):
            continue
        e = dict(old)
        e.update({(i, k): w for i, w in enumerate(ws) if w})
        r = recognize_connected(DynkinDiagram.build(k + 1, e))
        if r is not None and r.affine:
            found.add(r)
    return sorted(found, key=DynkinType.sort_key)


def affine_extensions(types):
    """All ways of adding one node to every component so that each becomes affine."""
    per = [_component_extensions(t) for t in canonical(types)]
    results = {canonical(choice) for choice in product(*per)}
    return sorted(results, key=lambda ts: [t.sort_key() for t in ts])


# ---------------------------------------------------------------------------
# the E7 root system


E7_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)]  # Bourbaki labels 1..7 shifted to 0..6


def e7_cartan():
    C = [[2 if i == j else 0 for j in range(7)] for i in range(7)]
    for i, j in E7_EDGES:
        C[i][j] = C[j][i] = -1
    return C


def _ip(u, v, C):
    return sum(u[i] * C[i][j] * v[j] for i in range(7) for j in range(7) if u[i] and v[j])


def positive_roots(simple, C):
    """Positive roots of the system with the given simple roots, as (vector, coefficients)."""
    k = len(simple)
    start = [(tuple(s), tuple(int(i == j) for j in range(k))) for i, s in enumerate(simple)]
    seen = {r for r, _ in start}
    out = list(start)
    queue = list(start)
    while queue:
        beta, coef = queue.pop()
        for i, a in enumerate(simple):
            if _ip(beta, a, C) == -1:
                nb = tuple(x + y for x, y in zip(beta, a))
                if nb not in seen:
                    seen.add(nb)
                    nc = tuple(c + (j == i) for j, c in enumerate(coef))
                    out.append((nb, nc))
                    queue.append((nb, nc))
    return out


def highest_root(simple, C):
    return max(positive_roots(simple, C), key=lambda rc: sum(rc[1]))[0]


def _split_components(vectors, C):
    n = len(vectors)
    d = DynkinDiagram.build(
        n, {(i, j): 1 for i in range(n) for j in range(i + 1, n) if _ip(vectors[i], vectors[j], C)}
    )
    return [[vectors[i] for i in comp] for comp in d.components()]


def _type_of(components, C):
    types = []
    for comp in components:
        n = len(comp)
        d = DynkinDiagram.build(
            n, {(i, j): -_ip(comp[i], comp[j], C) for i in range(n) for j in range(i + 1, n)}
        )
        t = recognize_connected(d)
        if t is None or t.affine:
            raise AssertionError("deleting an affine node must leave a finite system")
        types.append(t)
    return canonical(types)


@dataclass(frozen=True)
class RootSublattice:
    """A root subsystem of E7 with explicit simple roots in the E7 simple-root basis."""

    types: tuple
    generators: tuple  # tuple of 7-tuples

    @property
    def rank(self):
        return total_rank(self.types)

    def generator_matrix(self):
        """Generators as columns: a 7 x k integer matrix."""
        return [[g[i] for g in self.generators] for i in range(7)]

    def __str__(self):
        return format_types(self.types)


def finite_index_subsystems_E7():
    """The seven maximal-rank root subsystems of E7, one concrete embedding each."""
    return list(_subsystems())


@lru_cache(maxsize=None)
def _subsystems():
    """Iterate Borel-de Siebenthal: extend a component by its lowest root, drop a node, repeat."""
    C = e7_cartan()
    simple = [tuple(int(i == j) for j in range(7)) for i in range(7)]
    start = [simple]
    found = {}

    def record(components):
        key = _type_of(components, C)
        if key in found:
            return False
        found[key] = RootSublattice(key, tuple(v for comp in components for v in comp))
        return True

    record(start)
    queue = [start]
    while queue:
        comps = queue.pop(0)
        for ci, comp in enumerate(comps):
            theta = highest_root(comp, C)
            extended = comp + [tuple(-x for x in theta)]
            for drop in range(len(extended)):
                rest = extended[:drop] + extended[drop + 1:]
                new = comps[:ci] + _split_components(rest, C) + comps[ci + 1:]
                if record(new):
                    queue.append(new)
    return tuple(sorted(found.values(), key=lambda s: (len(s.types), [t.sort_key() for t in s.types])))


def subsystem(types):
    key = canonical(parse_types(types) if isinstance(types, str) else types)
    for s in finite_index_subsystems_E7():
        if s.types == key:
            return s
    raise KeyError(f"{format_types(key)} is not a finite-index subsystem of E7")


class InfiniteQuotientError(ValueError):
    pass


def quotient_group(sub: RootSublattice) -> AbelianGroup:
    """``E7 / sub`` via the Smith form of the generator matrix."""
    if sub.rank < 7:
        raise InfiniteQuotientError(f"{sub} has rank {sub.rank} < 7; the quotient is infinite")
    return cokernel(sub.generator_matrix(), 7)


__all__ = [
    "DynkinType",
    "DynkinDiagram",
    "RootSublattice",
    "InfiniteQuotientError",
    "affine_extensions",
    "canonical",
    "diagram_of_sum",
    "e7_cartan",
    "finite_index_subsystems_E7",
    "format_types",
    "highest_root",
    "parse_types",
    "positive_roots",
    "quotient_group",
    "recognize",
    "recognize_connected",
    "standard_diagram",
    "subsystem",
    "total_rank",
]
