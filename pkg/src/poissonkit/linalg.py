"""Exact linear algebra over Gaussian rationals.

Matrices are lists of lists of :class:`GaussianRational`.  Rank uses a
fraction-free Bareiss elimination after clearing denominators; kernels,
solves and inverses use ordinary field elimination (all exact).
"""

from __future__ import annotations

from math import gcd

from .scalars import GaussianRational, ZERO, ONE


def mat(rows) -> list:
    return [[GaussianRational.coerce(x) for x in row] for row in rows]


def zeros(n: int, m: int) -> list:
    return [[ZERO for _ in range(m)] for _ in range(n)]


def identity(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> list:
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        for j in range(m):
            s = ZERO
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            out[i][j] = s
    return out


def mat_vec(a, v) -> list:
    return [sum((a[i][j] * v[j] for j in range(len(v))), ZERO) for i in range(len(a))]


def mat_add(a, b) -> list:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b) -> list:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a) -> list:
    return [list(col) for col in zip(*a)]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_mat(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _clear_denominators(row) -> list:
    """Scale a row by the LCM of all coefficient denominators (rank-invariant)."""
    l = 1
    for x in row:
        l = _lcm(l, x.re.denominator)
        l = _lcm(l, x.im.denominator)
    if l == 1:
        return list(row)
    s = GaussianRational(l)
    return [x * s for x in row]


def rank(matrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination with full pivoting."""
    if not matrix or not matrix[0]:
        return 0
    m = [_clear_denominators(row) for row in matrix]
    nrows, ncols = len(m), len(m[0])
    prev = ONE
    r = 0
    c = 0
    while r < nrows and c < ncols:
        # find a pivot anywhere in the remaining block
        pivot = None
        for i in range(r, nrows):
            for j in range(c, ncols):
                if not m[i][j].is_zero():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != r:
            m[r], m[pi] = m[pi], m[r]
        if pj != c:
            for row in m:
                row[c], row[pj] = row[pj], row[c]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * piv - m[i][c] * m[r][j]) / prev
            m[i][c] = ZERO
        prev = piv
        r += 1
        c += 1
    return r


def rref(matrix):
    """Reduced row echelon form over the field; returns (rref, pivot columns)."""
    m = [list(row) for row in matrix]
    if not m or not m[0]:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv_row = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                piv_row = i
                break
        if piv_row is None:
            continue
        m[r], m[piv_row] = m[piv_row], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def nullspace(matrix) -> list:
    """Basis of the right kernel (list of vectors)."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    red, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(matrix, rhs):
    """One exact solution of ``A x = b`` or ``None`` if inconsistent."""
    if not matrix:
        return [] if all(GaussianRational.coerce(b).is_zero() for b in rhs) else None
    aug = [list(row) + [GaussianRational.coerce(b)] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    ncols = len(matrix[0])
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def inverse(matrix):
    """Exact inverse, or ``None`` if singular."""
    n = len(matrix)
    aug = [list(row) + list(idr) for row, idr in zip(matrix, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


def det(matrix) -> GaussianRational:
    """Exact determinant via fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return ONE
    m = [list(row) for row in matrix]
    prev = ONE
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = None
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    swap = i
                    break
            if swap is None:
                return ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = ZERO
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def span_rank(vectors) -> int:
    if not vectors:
        return 0
    return rank(list(vectors))


def in_span(vectors, v) -> bool:
    """Exact membership of ``v`` in the span of ``vectors``."""
    if all(GaussianRational.coerce(x).is_zero() for x in v):
        return True
    if not vectors:
        return False
    base = span_rank(vectors)
    return span_rank(list(vectors) + [list(v)]) == base


def subspace_equal(basis_a, basis_b) -> bool:
    """Exact equality of spans."""
    ra = span_rank(basis_a)
    rb = span_rank(basis_b)
    if ra != rb:
        return False
    return span_rank(list(basis_a) + list(basis_b)) == ra


def annihilator(vectors, dim: int) -> list:
    """Basis of the annihilator in the dual of ``span(vectors)`` inside R^dim."""
    if not vectors:
        return [row[:] for row in identity(dim)]
    return nullspace([list(v) for v in vectors])
