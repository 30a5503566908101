"""Koszul complexes of commuting matrix tuples, mapping cones and homology."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from . import linalg as la
from .errors import DimensionMismatch, NonCommutingTuple, NonZeroComposition
from .field import QQ, FieldSpec


class ExteriorBasis:
    """Basis ``e_S`` of the p-th exterior power of ``k^n``; subsets in lex order, 0-based."""

    def __init__(self, n: int, p: int):
        self.n, self.p = n, p
        self.elements: List[Tuple[int, ...]] = list(combinations(range(n), p)) if 0 <= p <= n else []
        self._pos: Dict[Tuple[int, ...], int] = {s: i for i, s in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def position(self, s: Sequence[int]) -> int:
        return self._pos[tuple(s)]

    def element(self, i: int) -> Tuple[int, ...]:
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)


class MatrixTuple:
    """``n`` pairwise commuting ``dim x dim`` matrices over an exact field."""

    def __init__(self, mats: Sequence[Sequence[Sequence]], field: FieldSpec = QQ,
                 dim: int | None = None, check: bool = True):
        self.field = field
        self.mats = [[[field(c) for c in row] for row in m] for m in mats]
        if dim is None:
            if not self.mats:
                raise DimensionMismatch("dim is required for an empty tuple")
            dim = len(self.mats[0])
        self.dim = dim
        for m in self.mats:
            if len(m) != dim or any(len(r) != dim for r in m):
                raise DimensionMismatch(f"expected {dim}x{dim} matrices")
        if check:
            zero = field.zero
            for i, j in combinations(range(len(self.mats)), 2):
                a, b = self.mats[i], self.mats[j]
                if la.matmul(a, b, zero, dim) != la.matmul(b, a, zero, dim):
                    raise NonCommutingTuple(f"matrices {i} and {j} do not commute")

    @property
    def n(self) -> int:
        return len(self.mats)

    def __getitem__(self, i):
        return self.mats[i]

    def __len__(self):
        return len(self.mats)

    def shifted(self, a: Sequence) -> "MatrixTuple":
        """The tuple ``x - a``."""
        if len(a) != self.n:
            raise DimensionMismatch(f"point of length {len(a)} for a {self.n}-tuple")
        out = []
        for m, c in zip(self.mats, a):
            c = self.field(c)
            out.append([[v - c if i == j else v for j, v in enumerate(row)] for i, row in enumerate(m)])
        return MatrixTuple(out, self.field, self.dim, check=False)

    def drop_last(self) -> "MatrixTuple":
        return MatrixTuple(self.mats[:-1], self.field, self.dim, check=False)

    def append(self, m) -> "MatrixTuple":
        return MatrixTuple(self.mats + [m], self.field, self.dim)

    def __eq__(self, other):
        return isinstance(other, MatrixTuple) and self.field == other.field and \
            self.dim == other.dim and self.mats == other.mats

    def __repr__(self):
        return f"MatrixTuple(n={self.n}, dim={self.dim}, field={self.field})"


@dataclass
class ChainComplex:
    """``diffs[p]`` is the matrix of ``C_{p+1} -> C_p`` (shape ``dims[p] x dims[p+1]``)."""

    dims: List[int]
    diffs: List[list]
    field: FieldSpec = QQ

    def __post_init__(self):
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise DimensionMismatch("need one differential between consecutive degrees")
        for p, d in enumerate(self.diffs):
            r, c = len(d), (len(d[0]) if d else self.dims[p + 1])
            if r != self.dims[p] or c != self.dims[p + 1] or any(len(row) != c for row in d):
                raise DimensionMismatch(f"differential {p} has shape {r}x{c}, "
                                        f"expected {self.dims[p]}x{self.dims[p + 1]}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def composition_vanishes(self) -> bool:
        zero = self.field.zero
        for p in range(len(self.diffs) - 1):
            prod = la.matmul(self.diffs[p], self.diffs[p + 1], zero, self.dims[p + 1])
            if not la.is_zero(prod):
                return False
        return True

    def check(self) -> "ChainComplex":
        if not self.composition_vanishes():
            raise NonZeroComposition("consecutive differentials do not compose to zero")
        return self


@dataclass(frozen=True)
class HomologyReport:
    """Homology dimensions ``d_0..d_N`` and the index ``sum (-1)^(p+1) d_p``."""

    d: Tuple[int, ...]
    index: int
    resolvent: bool = False

    @classmethod
    def from_dims(cls, d: Sequence[int], resolvent: bool = False) -> "HomologyReport":
        d = tuple(int(x) for x in d)
        return cls(d, sum((-1) ** (p + 1) * x for p, x in enumerate(d)), resolvent)

    def as_dict(self) -> dict:
        return {"d": list(self.d), "index": self.index, "resolvent": self.resolvent}


def build_koszul(x: MatrixTuple, a: Sequence | None = None) -> ChainComplex:
    """Koszul complex of ``x - a``.

    The differential sends ``m ⊗ e_S`` (``S = i_1 < ... < i_p``) to
    ``sum_s (-1)^(s+1) (x_{i_s} - a_{i_s}) m ⊗ e_{S minus i_s}``. Degree p is
    laid out as ``C(n, p)`` consecutive blocks of size ``dim``, one per subset.
    """
    n, m, F = x.n, x.dim, x.field
    y = x.shifted(a) if a is not None else x
    zero = F.zero
    bases = [ExteriorBasis(n, p) for p in range(n + 1)]
    dims = [m * len(b) for b in bases]
    diffs = []
    for p in range(1, n + 1):
        mat = la.zeros(dims[p - 1], dims[p], zero)
        lower = bases[p - 1]
        for ci, S in enumerate(bases[p]):
            for s, i in enumerate(S):
                sign = 1 if s % 2 == 0 else -1
                T = S[:s] + S[s + 1:]
                ri = lower.position(T)
                blk = y.mats[i]
                r0, c0 = ri * m, ci * m
                for u in range(m):
                    row = blk[u]
                    out = mat[r0 + u]
                    for v in range(m):
                        if row[v]:
                            out[c0 + v] = row[v] if sign > 0 else -row[v]
        diffs.append(mat)
    return ChainComplex(dims, diffs, F)


def complex_ranks(C: ChainComplex) -> List[int]:
    return [la.rank(d) if d and d[0] else 0 for d in C.diffs]


def homology_dims(C: ChainComplex, check: bool = True) -> HomologyReport:
    """Dimensions of ``H_p = ker / im`` in every degree."""
    if check:
        C.check()
    ranks = complex_ranks(C)
    d = []
    for p, dim in enumerate(C.dims):
        out_rank = ranks[p - 1] if p >= 1 else 0
        in_rank = ranks[p] if p < len(ranks) else 0
        d.append(dim - out_rank - in_rank)
    return HomologyReport.from_dims(d)


class DegreeMaps(list):
    """An endomorphism of a complex given by one matrix per degree."""


def _degree_endo(t, C: ChainComplex, p: int) -> list:
    """The component of ``t`` on ``C_p``.

    ``t`` is either :class:`DegreeMaps` or a single matrix acting on each
    consecutive block of size ``len(t)`` (as ``1 ⊗ t`` on ``M ⊗ Λ^p``).
    """
    if isinstance(t, DegreeMaps):
        return t[p]
    size = len(t)
    dim = C.dims[p]
    if size == 0 or dim == 0:
        return la.zeros(dim, dim, C.field.zero)
    if dim % size:
        raise DimensionMismatch(f"endomorphism of size {size} does not divide degree {p} of size {dim}")
    return la.block_diag_kron(t, dim // size, C.field.zero)


def degree_endomorphisms(t, C: ChainComplex) -> List[list]:
    return [_degree_endo(t, C, p) for p in range(len(C.dims))]


def commutes_with(t, C: ChainComplex) -> bool:
    ts = degree_endomorphisms(t, C)
    zero = C.field.zero
    for p, d in enumerate(C.diffs):
        lhs = la.matmul(ts[p], d, zero, C.dims[p])
        rhs = la.matmul(d, ts[p + 1], zero, C.dims[p + 1])
        if lhs != rhs:
            return False
    return True


def cone(t, C: ChainComplex, check: bool = True) -> ChainComplex:
    """Mapping cone of an endomorphism ``t`` of ``C``.

    Degree p is ``C_p ⊕ C_{p-1}`` and the differential is
    ``(c_p, c_{p-1}) -> (d c_p + (-1)^(p-1) t c_{p-1}, d c_{p-1})``.
    """
    if check and not commutes_with(t, C):
        raise NonCommutingTuple("endomorphism does not commute with the differentials")
    ts = degree_endomorphisms(t, C)
    N = len(C.dims)
    zero = C.field.zero
    cdim = lambda q: C.dims[q] if 0 <= q < N else 0
    dims = [cdim(p) + cdim(p - 1) for p in range(N + 1)]
    diffs = []
    for p in range(1, N + 1):
        # block matrix from degree p to degree p-1
        rows_top, rows_bot = cdim(p - 1), cdim(p - 2)
        cols_left, cols_right = cdim(p), cdim(p - 1)
        mat = la.zeros(rows_top + rows_bot, cols_left + cols_right, zero)
        if rows_top and cols_left:
            d = C.diffs[p - 1]
            for i in range(rows_top):
                mat[i][:cols_left] = list(d[i])
        if rows_top and cols_right:
            tm = ts[p - 1]
            neg = (p - 1) % 2 == 1
            for i in range(rows_top):
                for j in range(cols_right):
                    v = tm[i][j]
                    if v:
                        mat[i][cols_left + j] = -v if neg else v
        if rows_bot and cols_right:
            d = C.diffs[p - 2]
            for i in range(rows_bot):
                mat[rows_top + i][cols_left:] = list(d[i])
        diffs.append(mat)
    return ChainComplex(dims, diffs, C.field)


def cone_basis_permutation(n: int, p: int) -> List[int]:
    """Positions in the lex basis of ``Λ^p k^n`` of the cone basis.

    The cone basis of ``Kos(x)`` viewed as ``Con(x_n, Kos(x'))`` lists subsets
    without ``n-1`` first, then ``T ∪ {n-1}`` for ``|T| = p-1``; both halves in
    lex order. No signs arise.
    """
    full = ExteriorBasis(n, p)
    out = [full.position(S) for S in ExteriorBasis(n - 1, p)]
    out += [full.position(T + (n - 1,)) for T in ExteriorBasis(n - 1, p - 1)]
    return out


def permute_koszul(C: ChainComplex, n: int, block: int) -> ChainComplex:
    """Reorder a Koszul complex of an n-tuple on ``k^block`` into cone order."""
    perms = []
    for p in range(n + 1):
        perm = cone_basis_permutation(n, p)
        perms.append([b * block + u for b in perm for u in range(block)])
    diffs = []
    for p, d in enumerate(C.diffs):
        rp, cp = perms[p], perms[p + 1]
        diffs.append([[d[r][c] for c in cp] for r in rp])
    return ChainComplex(list(C.dims), diffs, C.field)


def homology_basis(C: ChainComplex, p: int):
    """``(H, B)``: cycle representatives spanning ``H_p`` and a basis of boundaries."""
    F = C.field
    zero, one = F.zero, F.one
    dim = C.dims[p]
    if p >= 1 and C.dims[p - 1]:
        Z = la.kernel(C.diffs[p - 1], dim, zero, one)
    else:
        Z = la.identity(dim, zero, one)
    if p < len(C.diffs) and C.dims[p + 1]:
        B = la.column_basis(C.diffs[p], C.dims[p + 1])
    else:
        B = []
    H = []
    cur = list(B)
    rk = len(cur)
    for z in Z:
        trial = cur + [z]
        r2 = la.rank(trial)
        if r2 > rk:
            cur, rk = trial, r2
            H.append(z)
    return H, B


def induced_action(t, C: ChainComplex, p: int) -> list:
    """Matrix of the map induced by ``t`` on ``H_p(C)`` in a chosen basis.

    Only similarity-invariant data (rank, nullity) is meaningful.
    """
    F = C.field
    H, B = homology_basis(C, p)
    d = len(H)
    if d == 0:
        return []
    tp = _degree_endo(t, C, p)
    cols = la.transpose(H + B)
    out = la.zeros(d, d, F.zero)
    for j, h in enumerate(H):
        w = la.matvec(tp, h, F.zero)
        c = la.solve(cols, w, F.zero)
        if c is None:
            raise NonCommutingTuple("endomorphism does not preserve cycles")
        for i in range(d):
            out[i][j] = c[i]
    return out


def dimension_inflate(d: Sequence[int], m: int, n: int) -> List[int]:
    """Apply ``(d_0..d_k) -> (d_0, d_0+d_1, ..., d_{k-1}+d_k, d_k)`` for k = m..n-1."""
    if m > n:
        raise ValueError(f"cannot inflate from {m} down to {n}")
    if len(d) != m + 1:
        raise DimensionMismatch(f"expected {m + 1} entries, got {len(d)}")
    cur = list(d)
    for _ in range(m, n):
        cur = [cur[0]] + [cur[i - 1] + cur[i] for i in range(1, len(cur))] + [cur[-1]]
    return cur


def koszul_dims(x: MatrixTuple, a: Sequence | None = None) -> HomologyReport:
    """Homology dimensions of ``Kos(x - a)``."""
    if x.n == 0:
        return HomologyReport.from_dims([x.dim])
    return homology_dims(build_koszul(x, a), check=False)
