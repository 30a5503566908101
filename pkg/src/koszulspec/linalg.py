"""Exact dense linear algebra on lists of rows.

Entries are field elements (``Fraction`` or ``Mod``). Nothing here knows which
field it is working in beyond the ``zero`` passed by the caller, so every
routine works for QQ and GF(p) alike. Elimination skips zero entries, which
keeps the (very sparse) Koszul matrices cheap.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

Matrix = List[list]


def zeros(rows: int, cols: int, zero) -> Matrix:
    return [[zero] * cols for _ in range(rows)]


def identity(n: int, zero, one) -> Matrix:
    m = zeros(n, n, zero)
    for i in range(n):
        m[i][i] = one
    return m


def shape(a: Sequence[Sequence]) -> Tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def copy(a: Sequence[Sequence]) -> Matrix:
    return [list(r) for r in a]


def transpose(a: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero, inner: int | None = None) -> Matrix:
    """Product ``a @ b``; ``inner`` disambiguates shapes with zero rows."""
    n = len(a)
    k = inner if inner is not None else (len(a[0]) if a else len(b))
    m = len(b[0]) if b else 0
    out = zeros(n, m, zero)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    v = bt[j]
                    if v:
                        oi[j] = oi[j] + c * v
    return out


def matvec(a: Sequence[Sequence], v: Sequence, zero) -> list:
    out = []
    for row in a:
        s = zero
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def scale(a, c):
    return [[x * c for x in r] for r in a]


def is_zero(a: Sequence[Sequence]) -> bool:
    return all(not x for r in a for x in r)


def rref(a: Sequence[Sequence], ncols: int | None = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = copy(a)
    nrows = len(m)
    ncols = ncols if ncols is not None else (len(m[0]) if m else 0)
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        row = m[r]
        inv = 1 / row[c]
        if inv != 1:
            row = [x * inv if x else x for x in row]
            m[r] = row
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    for j in nz:
                        mi[j] = mi[j] - f * row[j]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    """Rank by forward elimination only (no back substitution)."""
    m = [list(r) for r in a if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    rows = m
    for c in range(ncols):
        p = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rk], rows[p] = rows[p], rows[rk]
        piv = rows[rk]
        inv = 1 / piv[c]
        nz = [j for j in range(c + 1, ncols) if piv[j]]
        for i in range(rk + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f * inv
                ri = rows[i]
                for j in nz:
                    ri[j] = ri[j] - f * piv[j]
        rk += 1
        if rk == len(rows):
            break
    return rk


def kernel(a: Sequence[Sequence], ncols: int, zero, one) -> List[list]:
    """Basis of ``{v : a v = 0}`` as column vectors of length ``ncols``."""
    if not a or all(not x for row in a for x in row):
        return [[one if j == i else zero for j in range(ncols)] for i in range(ncols)]
    r, pivots = rref(a, ncols)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [zero] * ncols
        v[f] = one
        for i, pc in enumerate(pivots):
            c = r[i][f]
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def column_basis(a: Sequence[Sequence], ncols: int) -> List[list]:
    """Independent columns of ``a`` spanning its image (as column vectors)."""
    if not a:
        return []
    _, pivots = rref(a, ncols)
    return [[row[j] for row in a] for j in pivots]


def solve(a: Sequence[Sequence], b: Sequence, zero) -> Optional[list]:
    """One solution of ``a x = b`` or ``None`` if inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    aug = [list(a[i]) + [b[i]] for i in range(nrows)]
    r, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][ncols]
    return x


def in_span(vectors: Sequence[Sequence], v: Sequence, zero) -> bool:
    if not vectors:
        return all(not x for x in v)
    cols = transpose(vectors)
    return solve(cols, v, zero) is not None


def extend_to_basis(vectors: List[list], n: int, zero, one) -> List[list]:
    """Complete independent ``vectors`` (length ``n``) to a basis of k^n with unit vectors."""
    basis = [list(v) for v in vectors]
    rk = rank(basis) if basis else 0
    for i in range(n):
        if len(basis) == n:
            break
        e = [zero] * n
        e[i] = one
        trial = basis + [e]
        r2 = rank(trial)
        if r2 > rk:
            basis, rk = trial, r2
    return basis


def inverse(a: Sequence[Sequence], zero, one) -> Matrix:
    n = len(a)
    aug = [list(a[i]) + [one if j == i else zero for j in range(n)] for i in range(n)]
    r, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r[:n]]


def block_diag_kron(t: Sequence[Sequence], copies: int, zero) -> Matrix:
    """``I_copies ⊗ t``: ``copies`` diagonal blocks equal to ``t``."""
    m = len(t)
    out = zeros(m * copies, m * copies, zero)
    for b in range(copies):
        o = b * m
        for i in range(m):
            for j in range(m):
                if t[i][j]:
                    out[o + i][o + j] = t[i][j]
    return out
