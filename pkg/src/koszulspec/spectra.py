"""Joint spectra of commuting matrix tuples and checks of their structural laws."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Sequence, Tuple

from . import linalg as la
from .errors import DimensionMismatch, SpectrumNotSplit
from .field import FieldSpec
from .koszul import MatrixTuple, koszul_dims
from .poly import MultiPoly

Point = Tuple


# ---------------------------------------------------------------------------
# Characteristic polynomials and their roots
# ---------------------------------------------------------------------------

def _hessenberg(a: Sequence[Sequence], zero) -> list:
    h = la.copy(a)
    n = len(h)
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if h[r][m - 1]), None)
        if i is None:
            continue
        if i != m:
            h[i], h[m] = h[m], h[i]
            for row in h:
                row[i], row[m] = row[m], row[i]
        piv = h[m][m - 1]
        for r in range(m + 1, n):
            u = h[r][m - 1] / piv
            if not u:
                continue
            h[r] = [x - u * y for x, y in zip(h[r], h[m])]
            for row in h:
                row[m] = row[m] + u * row[r]
    return h


def _pmul_linear(p: list, c, zero) -> list:
    """``(X - c) * p`` on ascending coefficient lists."""
    out = [zero] * (len(p) + 1)
    for k, v in enumerate(p):
        out[k + 1] = out[k + 1] + v
        out[k] = out[k] - c * v
    return out


def charpoly(a: Sequence[Sequence], field: FieldSpec) -> list:
    """Ascending coefficients of ``det(X - a)`` (monic) via Hessenberg reduction."""
    zero, one = field.zero, field.one
    n = len(a)
    h = _hessenberg(a, zero)
    polys = [[one]]
    for m in range(1, n + 1):
        p = _pmul_linear(polys[m - 1], h[m - 1][m - 1], zero)
        t = one
        for i in range(m - 1, 0, -1):
            t = t * h[i][i - 1]
            c = h[i - 1][m - 1] * t
            if c:
                for k, v in enumerate(polys[i - 1]):
                    p[k] = p[k] - c * v
        polys.append(p)
    return polys[n]


def _peval(p: list, x):
    acc = p[-1] * 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deflate(p: list, r) -> list:
    """Quotient of ``p`` by ``X - r`` (assumes ``p(r) == 0``)."""
    d = len(p) - 1
    q = [p[0] * 0] * d
    carry = p[d]
    for k in range(d - 1, -1, -1):
        q[k] = carry
        carry = p[k] + carry * r
    return q


def _divisors(m: int) -> List[int]:
    m = abs(m)
    small, large = [], []
    f = 1
    while f * f <= m:
        if m % f == 0:
            small.append(f)
            if f * f != m:
                large.append(m // f)
        f += 1
    return small + large[::-1]


def _rational_candidates(p: list) -> List[Fraction]:
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    while ints and ints[0] == 0:
        ints = ints[1:]
    if len(ints) <= 1:
        return []
    cands = set()
    for num in _divisors(ints[0]):
        for d in _divisors(ints[-1]):
            cands.add(Fraction(num, d))
            cands.add(Fraction(-num, d))
    return sorted(cands)


def poly_roots(p: list, field: FieldSpec) -> Dict[object, int]:
    """Roots with multiplicity of an ascending coefficient list.

    Raises :class:`SpectrumNotSplit` if ``p`` has an irreducible factor of
    degree at least 2 over ``field``.
    """
    roots: Dict[object, int] = {}
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    while len(p) > 1 and not p[0]:
        roots[field.zero] = roots.get(field.zero, 0) + 1
        p = p[1:]
    cands = field.elements() if not field.is_rational else _rational_candidates(p)
    for r in cands:
        while len(p) > 1 and not _peval(p, r):
            roots[field(r)] = roots.get(field(r), 0) + 1
            p = _deflate(p, r)
    if len(p) > 1:
        raise SpectrumNotSplit(
            f"characteristic polynomial has a factor of degree {len(p) - 1} with no roots in {field.name}")
    return dict(sorted(roots.items(), key=lambda kv: field.sort_key(kv[0])))


def eigenvalues(a: Sequence[Sequence], field: FieldSpec) -> Dict[object, int]:
    """Eigenvalues with algebraic multiplicity; requires a split characteristic polynomial."""
    return poly_roots(charpoly(a, field), field)


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumSet:
    points: Tuple[Point, ...]
    complete: bool = True
    diagnostic: str = ""

    @classmethod
    def of(cls, points, field: FieldSpec, complete=True, diagnostic="") -> "SpectrumSet":
        pts = sorted(set(tuple(p) for p in points), key=lambda p: tuple(field.sort_key(c) for c in p))
        return cls(tuple(pts), complete, diagnostic)

    def __contains__(self, a):
        return tuple(a) in self.points

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def as_set(self) -> set:
        return set(self.points)


def taylor_membership(x: MatrixTuple, a: Sequence) -> bool:
    """Whether ``Kos(x - a)`` fails to be exact."""
    if len(a) != x.n:
        raise DimensionMismatch(f"point of length {len(a)} for a {x.n}-tuple")
    return any(koszul_dims(x, a).d)


def candidate_grid(x: MatrixTuple) -> List[Point]:
    eig = [list(eigenvalues(m, x.field)) for m in x.mats]
    return [tuple(p) for p in product(*eig)]


def taylor_spectrum(x: MatrixTuple) -> SpectrumSet:
    """All points where the Koszul complex is not exact, searched on the eigenvalue grid."""
    if x.n == 0:
        return SpectrumSet(((),) if x.dim else (), True, "empty tuple")
    pts = [a for a in candidate_grid(x) if taylor_membership(x, a)]
    return SpectrumSet.of(pts, x.field)


def joint_kernel_dim(x: MatrixTuple, a: Sequence) -> int:
    y = x.shifted(a)
    stacked = [row for m in y.mats for row in m]
    return x.dim - la.rank(stacked)


def point_spectrum(x: MatrixTuple) -> SpectrumSet:
    """Joint eigenvalues: points with a common nonzero kernel vector."""
    if x.n == 0:
        return SpectrumSet(((),) if x.dim else (), True, "empty tuple")
    pts = [a for a in candidate_grid(x) if joint_kernel_dim(x, a) > 0]
    return SpectrumSet.of(pts, x.field)


def brute_force_spectrum(x: MatrixTuple) -> SpectrumSet:
    """Membership test at every point of affine space over a prime field."""
    if x.field.is_rational:
        raise ValueError("exhaustive search needs a finite field")
    els = x.field.elements()
    pts = [a for a in product(els, repeat=x.n) if taylor_membership(x, a)]
    return SpectrumSet.of(pts, x.field)


def _matrix_powers(m, k, zero, one):
    out = [la.identity(len(m), zero, one)]
    for _ in range(k):
        out.append(la.matmul(out[-1], m, zero, len(m)))
    return out


def apply_polynomial(x: MatrixTuple, q: MultiPoly) -> list:
    """The matrix ``q(x_1, ..., x_n)``."""
    if q.nvars != x.n:
        raise DimensionMismatch(f"polynomial in {q.nvars} variables applied to a {x.n}-tuple")
    F = x.field
    zero, one = F.zero, F.one
    degs = [max((e[i] for e in q.terms), default=0) for i in range(x.n)]
    pows = [_matrix_powers(m, d, zero, one) for m, d in zip(x.mats, degs)]
    out = la.zeros(x.dim, x.dim, zero)
    for e, c in q.terms.items():
        term = la.identity(x.dim, zero, one)
        for i, k in enumerate(e):
            if k:
                term = la.matmul(term, pows[i][k], zero, x.dim)
        out = la.add(out, la.scale(term, c))
    return out


def apply_polynomial_tuple(x: MatrixTuple, qs: Sequence[MultiPoly]) -> MatrixTuple:
    return MatrixTuple([apply_polynomial(x, q) for q in qs], x.field, x.dim, check=False)


@dataclass
class SetComparison:
    equal: bool
    left: SpectrumSet
    right: SpectrumSet
    missing: list = dc_field(default_factory=list)
    extra: list = dc_field(default_factory=list)
    note: str = ""


def _compare(left: SpectrumSet, right: SpectrumSet, note: str = "") -> SetComparison:
    a, b = left.as_set(), right.as_set()
    return SetComparison(a == b, left, right, sorted(b - a, key=str), sorted(a - b, key=str), note)


def check_spectral_mapping(x: MatrixTuple, qs: Sequence[MultiPoly]) -> SetComparison:
    """Compare the spectrum of ``q(x)`` (left) with the image ``q(spectrum of x)`` (right)."""
    image = SpectrumSet.of([tuple(q.eval(a) for q in qs) for a in taylor_spectrum(x)], x.field)
    return _compare(taylor_spectrum(apply_polynomial_tuple(x, qs)), image)


def check_projection(x: MatrixTuple) -> SetComparison:
    """Compare the spectrum of ``x'`` (all but the last matrix) with the projected spectrum of ``x``."""
    if x.n <= 1:
        empty = SpectrumSet((), True)
        return SetComparison(True, empty, empty, note="skipped: projection onto the empty tuple")
    proj = SpectrumSet.of([a[:-1] for a in taylor_spectrum(x)], x.field)
    return _compare(taylor_spectrum(x.drop_last()), proj)


# ---------------------------------------------------------------------------
# Simultaneous triangularization
# ---------------------------------------------------------------------------

@dataclass
class TriangularForm:
    basis_change: list
    diagonal: List[Point]
    conjugated: List[list]

    def is_upper_triangular(self) -> bool:
        return all(not m[i][j] for m in self.conjugated for i in range(len(m)) for j in range(i))


def _is_upper(m) -> bool:
    return all(not m[i][j] for i in range(len(m)) for j in range(i))


def _restrict(a, basis: List[list], F: FieldSpec) -> list:
    """Matrix of ``a`` on the invariant subspace spanned by ``basis``."""
    cols = la.transpose(basis)
    k = len(basis)
    out = la.zeros(k, k, F.zero)
    for j, w in enumerate(basis):
        c = la.solve(cols, la.matvec(a, w, F.zero), F.zero)
        if c is None:
            raise ArithmeticError("subspace is not invariant")
        for i in range(k):
            out[i][j] = c[i]
    return out


def _common_eigenvector(mats: List[list], F: FieldSpec):
    """Lexicographically smallest joint eigenvalue and one joint eigenvector."""
    dim = len(mats[0])
    zero, one = F.zero, F.one
    basis = la.identity(dim, zero, one)
    point = []
    for a in mats:
        r = _restrict(a, basis, F)
        lam = next(iter(eigenvalues(r, F)))
        shifted = [[v - lam if i == j else v for j, v in enumerate(row)] for i, row in enumerate(r)]
        ker = la.kernel(shifted, len(r), zero, one)
        # back to ambient coordinates
        basis = [la.matvec(la.transpose(basis), k, zero) for k in ker]
        point.append(lam)
    return tuple(point), basis[0]


def _triangularize(mats: List[list], F: FieldSpec):
    dim = len(mats[0])
    zero, one = F.zero, F.one
    if dim == 0:
        return [], []
    if all(_is_upper(m) for m in mats):
        return la.identity(dim, zero, one), [tuple(m[i][i] for m in mats) for i in range(dim)]
    point, v = _common_eigenvector(mats, F)
    q_cols = la.extend_to_basis([v], dim, zero, one)
    Q = la.transpose(q_cols)
    Qi = la.inverse(Q, zero, one)
    conj = [la.matmul(la.matmul(Qi, m, zero, dim), Q, zero, dim) for m in mats]
    sub = [[row[1:] for row in c[1:]] for c in conj]
    if dim == 1:
        return Q, [point]
    P_sub, diag = _triangularize(sub, F)
    full = la.identity(dim, zero, one)
    for i in range(dim - 1):
        for j in range(dim - 1):
            full[i + 1][j + 1] = P_sub[i][j]
    return la.matmul(Q, full, zero, dim), [point] + diag


def triangularize(x: MatrixTuple) -> TriangularForm:
    """Common basis change making every matrix of ``x`` upper triangular.

    Common eigenvectors are split off in lexicographic order of their joint
    eigenvalue until the remaining block is upper triangular, which is then
    kept as is. A tuple that is already upper triangular gets the identity.
    """
    F = x.field
    zero, one = F.zero, F.one
    if x.n == 0:
        return TriangularForm(la.identity(x.dim, zero, one), [()] * x.dim, [])
    for m in x.mats:
        eigenvalues(m, F)  # refuses non-split input up front
    P, diag = _triangularize([la.copy(m) for m in x.mats], F)
    if x.dim == 0:
        return TriangularForm([], [], [[] for _ in x.mats])
    Pi = la.inverse(P, zero, one)
    conj = [la.matmul(la.matmul(Pi, m, zero, x.dim), P, zero, x.dim) for m in x.mats]
    diag = [tuple(c[i][i] for c in conj) for i in range(x.dim)]
    return TriangularForm(P, diag, conj)
