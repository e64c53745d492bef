"""Dense exact linear algebra over QQ or GF(p).

Matrices are lists of rows.  Entries are field elements (``Fraction`` or
``Fp``); every routine takes the field explicitly so that empty inputs and
integer literals are handled uniformly.
"""

from __future__ import annotations


def row_reduce(rows, field):
    """Reduced row echelon form.  Returns ``(rref_rows, pivot_columns)``."""
    m = [[field(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field) -> int:
    return len(row_reduce(rows, field)[1])


def nullspace(rows, field, ncols=None):
    """Basis of the right kernel ``{v : rows @ v = 0}``."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_reduce(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs, field):
    """One solution of ``rows @ x = rhs``, or ``None`` if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = row_reduce(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def determinant(rows, field):
    m = [[field(x) for x in r] for r in rows]
    n = len(m)
    det = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = field.one / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), start=0 * row[0]) for col in bt] for row in a]


def minimal_polynomial(matrix, field):
    """Monic minimal polynomial of a square matrix, as coefficients low-to-high."""
    n = len(matrix)
    ident = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    powers = [ident]
    while True:
        flat = [[x for row in p for x in row] for p in powers]
        # columns are flattened powers; look for a dependency
        cols = [list(c) for c in zip(*flat)]
        ker = nullspace(cols, field, ncols=len(powers))
        if ker:
            v = ker[0]
            lead = v[-1]
            if lead:
                return [x / lead for x in v]
        powers.append(matmul(powers[-1], matrix))
