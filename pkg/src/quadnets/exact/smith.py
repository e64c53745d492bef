"""Smith normal form of integer matrices and the abelian groups they present."""

from __future__ import annotations

from dataclasses import dataclass


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_form(matrix):
    """Diagonalise an integer matrix by unimodular row and column operations.

    Returns ``(D, U, V)`` with ``U @ matrix @ V == D``, ``D`` diagonal with
    nonnegative entries ``d_1 | d_2 | ... | d_r`` followed by zeros.
    """
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        for M in (A, V):
            for row in M:
                row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def smith_normal_form(matrix):
    """Invariant factors ``d_1 | ... | d_r`` (all >= 1) and the rank ``r``."""
    if not matrix or not matrix[0]:
        return [], 0
    D, _, _ = smith_form(matrix)
    factors = [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]
    return factors, len(factors)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z/t_1 + ... + Z/t_k`` with ``t_1 | t_2 | ...`` and every ``t_i > 1``."""

    free_rank: int
    torsion: tuple[int, ...]

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def order(self):
        if self.free_rank:
            return None
        o = 1
        for t in self.torsion:
            o *= t
        return o

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        counts = {}
        for t in self.torsion:
            counts[t] = counts.get(t, 0) + 1
        for t in sorted(counts):
            parts.append(f"Z/{t}" if counts[t] == 1 else f"(Z/{t})^{counts[t]}")
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``: ``"0"``, ``"Z/2"``, ``"(Z/2)^3"``, ``"Z^2 + Z/4"``."""
        text = text.strip()
        if text in ("0", "trivial"):
            return cls(0, ())
        free = 0
        torsion = []
        for part in text.split("+"):
            part = part.strip().replace(" ", "")
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("(Z/"):
                inner, _, power = part.partition(")^")
                torsion += [int(inner[3:])] * int(power or 1)
            elif part.startswith("Z/"):
                torsion.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group {text!r}")
        return cls(free, tuple(sorted(torsion)))


def cokernel(matrix, nrows=None):
    """The group ``Z^rows / (column span of matrix)``."""
    rows = len(matrix) if nrows is None else nrows
    if not matrix or not matrix[0]:
        return AbelianGroup(rows, ())
    factors, r = smith_normal_form(matrix)
    return AbelianGroup(rows - r, tuple(d for d in factors if d > 1))
