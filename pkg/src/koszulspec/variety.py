"""Local invariants of coordinate rings ``R = P/I`` at closed points.

Every routine moves the queried point to the origin first, so the maximal
ideal becomes ``<X_1, ..., X_n>`` and its powers are monomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .errors import (DimensionMismatch, NoStandardRepresentation, NotStabilized,
                     PointNotOnVariety, UnsupportedCharacteristic)
from .field import FieldSpec
from .groebner import (Ideal, ideal_power_sum, ideal_quotient, krull_dim, maximal_ideal,
                       normal_form, quotient_dim, standard_monomials)
from .koszul import ChainComplex, HomologyReport, MatrixTuple, homology_dims, koszul_dims
from .numerical import NumericalPolynomial, fit_numerical_polynomial
from .poly import MultiPoly, monomials_below, monomials_of_degree
from .resolution import FreeModuleMap, FreeResolution, free_resolution


@dataclass(frozen=True)
class CyclicModule:
    """The coordinate ring ``P/ideal``."""

    ideal: Ideal

    @classmethod
    def parse(cls, gens: Sequence[str], vars: Sequence[str], field: FieldSpec | None = None):
        return cls(Ideal.parse(gens, vars, field))

    @property
    def n(self) -> int:
        return self.ideal.n

    @property
    def field(self) -> FieldSpec:
        return self.ideal.field

    @property
    def vars(self):
        return self.ideal.vars

    def point(self, a: Sequence) -> tuple:
        if len(a) != self.n:
            raise DimensionMismatch(f"point of length {len(a)} in {self.n}-space")
        return tuple(self.field(c) for c in a)

    def contains_point(self, a: Sequence) -> bool:
        return self.ideal.vanishes_at(self.point(a))

    def translated(self, a: Sequence) -> Ideal:
        return self.ideal.translate(self.point(a))


def _require_on_variety(R: CyclicModule, a) -> tuple:
    a = R.point(a)
    if not R.ideal.vanishes_at(a):
        raise PointNotOnVariety(f"the point {tuple(R.field.format(c) for c in a)} is not on V(I)")
    return a


def _pad(d: Sequence[int], n: int) -> List[int]:
    d = list(d)
    while len(d) > n + 1 and d[-1] == 0:
        d.pop()
    return d + [0] * (n + 1 - len(d))


# ---------------------------------------------------------------------------
# Koszul homology at a point
# ---------------------------------------------------------------------------

def evaluated_complex(res: FreeResolution) -> ChainComplex:
    """``k ⊗ F`` for a resolution of an ideal translated to the origin."""
    F = res.target.field
    return ChainComplex(res.ranks, res.evaluated(), F)


def tor_dims_at_point(R: CyclicModule, a: Sequence, cap: int | None = None,
                      minimal: bool = False) -> HomologyReport:
    """Koszul homology dimensions of ``R`` at ``a`` from a free resolution of ``R``.

    Off the variety the complex is exact and the all-zero report comes back
    with ``resolvent=True``.
    """
    a = R.point(a)
    n = R.n
    if not R.ideal.vanishes_at(a):
        return HomologyReport.from_dims([0] * (n + 1), resolvent=True)
    res = free_resolution(R.translated(a), cap=cap, minimal=minimal)
    rep = homology_dims(evaluated_complex(res), check=False)
    return HomologyReport.from_dims(_pad(rep.d, n))


def multiplication_matrices(I: Ideal) -> Tuple[MatrixTuple, List[tuple]]:
    """Action of the variables on ``P/I`` in its standard-monomial basis.

    Raises :class:`InfiniteDimensional` if ``P/I`` is not finite-dimensional.
    """
    basis = standard_monomials(I)
    pos = {e: i for i, e in enumerate(basis)}
    G = I.gb()
    F = I.field
    zero = F.zero
    mats = []
    for v in range(I.n):
        m = la.zeros(len(basis), len(basis), zero)
        for j, e in enumerate(basis):
            e2 = tuple(x + (1 if k == v else 0) for k, x in enumerate(e))
            nf = normal_form(MultiPoly.monomial(e2, I.vars, F), G)
            for t, c in nf.terms.items():
                m[pos[t]][j] = c
        mats.append(m)
    return MatrixTuple(mats, F, len(basis), check=False), basis


def koszul_dims_direct_zero_dim(R: CyclicModule, a: Sequence) -> HomologyReport:
    """Koszul homology of the finite-dimensional ``R`` from its multiplication matrices."""
    a = R.point(a)
    x, _ = multiplication_matrices(R.ideal)
    rep = koszul_dims(x, a)
    return HomologyReport.from_dims(rep.d, resolvent=not any(rep.d))


# ---------------------------------------------------------------------------
# Samuel function, Tor-polynomial, Serre's formula
# ---------------------------------------------------------------------------

@dataclass
class SamuelTable:
    point: tuple
    values: List[int]
    fitted: Optional[NumericalPolynomial] = None
    diagnostic: str = ""

    def as_dict(self, F: FieldSpec) -> dict:
        return {
            "point": [F.format(c) for c in self.point],
            "values": list(self.values),
            "fitted": self.fitted.as_dict() if self.fitted else None,
            "diagnostic": self.diagnostic,
        }


def _fit_or_none(values):
    try:
        return fit_numerical_polynomial(values), ""
    except NotStabilized as exc:
        return None, str(exc)


def samuel_values(R: CyclicModule, a: Sequence, r_max: int | None = None) -> SamuelTable:
    """``s(r) = dim_k P/(I + m_a^r)`` for ``r = 1..r_max`` (default ``n + 6``)."""
    a = _require_on_variety(R, a)
    r_max = R.n + 6 if r_max is None else r_max
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    J = R.translated(a)
    vals = [quotient_dim(ideal_power_sum(J, r)) for r in range(1, r_max + 1)]
    fitted, diag = _fit_or_none(vals)
    return SamuelTable(a, vals, fitted, diag)


def truncated_multiplication(f: MultiPoly, r: int) -> list:
    """Matrix of ``g -> f g`` on ``P / <X>^r`` in the degree-graded monomial basis."""
    n = f.nvars
    basis = monomials_below(n, r)
    pos = {e: i for i, e in enumerate(basis)}
    F = f.field
    m = la.zeros(len(basis), len(basis), F.zero)
    for j, e in enumerate(basis):
        for t, c in f.terms.items():
            prod = tuple(x + y for x, y in zip(t, e))
            i = pos.get(prod)
            if i is not None:
                m[i][j] = m[i][j] + c
    return m


def truncated_complex(res: FreeResolution, r: int) -> ChainComplex:
    """The resolution tensored with ``A_r = P/<X>^r``; homology is ``Tor(A_r, R)``."""
    F = res.target.field
    N = comb(r + res.target.n - 1, res.target.n)
    dims = [rk * N for rk in res.ranks]
    diffs = []
    for d in res.maps:
        big = la.zeros(d.rows * N, d.cols * N, F.zero)
        for i in range(d.rows):
            for j in range(d.cols):
                f = d.entries[i][j]
                if not f:
                    continue
                blk = truncated_multiplication(f, r)
                for u in range(N):
                    row = blk[u]
                    out = big[i * N + u]
                    for v in range(N):
                        if row[v]:
                            out[j * N + v] = row[v]
        diffs.append(big)
    return ChainComplex(dims, diffs, F)


@dataclass
class TorTable:
    point: tuple
    tor_dims: List[List[int]]  # tor_dims[r-1][i] = dim Tor_i(A_r, R)
    values: List[int]          # p(1..r_max)
    fitted: Optional[NumericalPolynomial] = None
    diagnostic: str = ""

    @property
    def tor0(self) -> List[int]:
        return [row[0] for row in self.tor_dims]


def tor_dims_truncated(R: CyclicModule, a: Sequence, r: int, res: FreeResolution | None = None) -> List[int]:
    """``dim Tor_i(P/m_a^r, R)`` for ``i = 0..n``."""
    a = R.point(a)
    if res is None:
        res = free_resolution(R.translated(a), minimal=True)
    rep = homology_dims(truncated_complex(res, r), check=False)
    return _pad(rep.d, R.n)


def tor_polynomial(R: CyclicModule, a: Sequence, r_max: int | None = None) -> TorTable:
    """``p(r) = sum_{i>=1} (-1)^(i+1) dim Tor_i(P/m_a^r, R)`` for ``r = 1..r_max``."""
    a = _require_on_variety(R, a)
    r_max = R.n + 6 if r_max is None else r_max
    res = free_resolution(R.translated(a), minimal=True)
    dims, vals = [], []
    for r in range(1, r_max + 1):
        d = tor_dims_truncated(R, a, r, res)
        dims.append(d)
        vals.append(sum((-1) ** (i + 1) * x for i, x in enumerate(d) if i >= 1))
    fitted, diag = _fit_or_none(vals)
    return TorTable(a, dims, vals, fitted, diag)


@dataclass
class InflatedIndex:
    r: int
    value: int           # -s(r) + p(r)
    samuel: int
    tor_poly: int
    plain_index: int
    expected_from_index: int   # C(r+n-1, n) * i_Y(a)
    expected_from_dim: int     # -δ_{nd} s(r)

    @property
    def consistent(self) -> bool:
        return self.value == self.expected_from_index == self.expected_from_dim


def inflated_index(R: CyclicModule, a: Sequence, r: int) -> InflatedIndex:
    """Index of the inflated tuple on ``R ⊗ P/m_a^r``, with the two closed forms it must match."""
    a = _require_on_variety(R, a)
    if r < 1:
        raise ValueError("r must be >= 1")
    d = tor_dims_truncated(R, a, r)
    s = d[0]
    p = sum((-1) ** (i + 1) * x for i, x in enumerate(d) if i >= 1)
    n = R.n
    idx = tor_dims_at_point(R, a).index
    dim = krull_dim(R.translated(a))
    return InflatedIndex(r, -s + p, s, p, idx, comb(r + n - 1, n) * idx, -s if dim == n else 0)


@dataclass
class MultiplicityReport:
    dim_d: int
    e: int
    index_at_point: int
    serre_consistent: bool
    samuel_degree: int
    leading_difference: int
    samuel: SamuelTable = dc_field(repr=False)


def serre_check(R: CyclicModule, a: Sequence, r_max: int | None = None) -> MultiplicityReport:
    """Compare the index at ``a`` with minus the n-th difference of the Samuel polynomial."""
    a = _require_on_variety(R, a)
    table = samuel_values(R, a, r_max)
    if table.fitted is None:
        raise NotStabilized(table.diagnostic)
    n = R.n
    fit = table.fitted
    e = fit.nth_difference(n)
    idx = tor_dims_at_point(R, a).index
    return MultiplicityReport(krull_dim(R.ideal), e, idx, idx == -e, fit.degree,
                              fit.leading_difference(), table)


# ---------------------------------------------------------------------------
# Lower bounds for H_1 from generators
# ---------------------------------------------------------------------------

@dataclass
class MinimalGeneratorProfile:
    generators: List[MultiPoly]
    exponents: List[List[Optional[int]]]   # exponents[i][j] = m_ij, None when no pure X_i term
    minima: List[Optional[int]]            # m_i
    sets: List[List[int]]                  # S_i, 0-based generator indices
    vectors: List[list]                    # v_j in k^n
    independent_count: int                 # t

    def minimal_generators(self) -> List[int]:
        return [j for j, v in enumerate(self.vectors) if any(v)]


def _no_char_two(F: FieldSpec):
    if F.characteristic == 2:
        raise UnsupportedCharacteristic("characteristic 2 is not supported here")


def h1_lower_bound(gens: Sequence[MultiPoly], a: Sequence) -> MinimalGeneratorProfile:
    """Profile of ``gens`` at ``a`` whose ``independent_count`` bounds ``dim H_1`` from below.

    For generator ``f_j`` and variable ``X_i`` (after moving ``a`` to the
    origin), ``m_ij`` is the lowest exponent of a term of ``f_j`` that is a pure
    power of ``X_i``; its coefficient is the value ``h_ij(a)``. The vector
    ``v_j`` collects these values for the variables where ``f_j`` attains the
    minimum ``m_i``.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    F = gens[0].field
    _no_char_two(F)
    n = gens[0].nvars
    a = tuple(F(c) for c in a)
    if len(a) != n:
        raise DimensionMismatch(f"point of length {len(a)} in {n}-space")
    shifted = []
    for j, f in enumerate(gens):
        if f.eval(a):
            raise NoStandardRepresentation(f"generator {j + 1} does not vanish at the point")
        shifted.append(f.translate(a))
    expo: List[List[Optional[int]]] = [[None] * len(gens) for _ in range(n)]
    coef = [[F.zero] * len(gens) for _ in range(n)]
    for j, g in enumerate(shifted):
        for e, c in g.terms.items():
            nz = [i for i, x in enumerate(e) if x]
            if len(nz) == 1:
                i = nz[0]
                if expo[i][j] is None or e[i] < expo[i][j]:
                    expo[i][j], coef[i][j] = e[i], c
    minima = [min((m for m in row if m is not None), default=None) for row in expo]
    sets = [[j for j, m in enumerate(expo[i]) if m is not None and m == minima[i]] for i in range(n)]
    vectors = [[coef[i][j] if j in sets[i] else F.zero for i in range(n)] for j in range(len(gens))]
    nonzero = [v for v in vectors if any(v)]
    t = la.rank(nonzero) if nonzero else 0
    return MinimalGeneratorProfile(gens, expo, minima, sets, vectors, t)


def jacobian_matrix(gens: Sequence[MultiPoly], a: Sequence) -> list:
    """``J[i][j] = (∂f_j / ∂X_i)(a)``."""
    gens = list(gens)
    n = gens[0].nvars
    return [[f.partial(i).eval(a) for f in gens] for i in range(n)]


def jacobian_rank(gens: Sequence[MultiPoly], a: Sequence) -> int:
    gens = [g for g in gens]
    if not gens:
        return 0
    return la.rank(jacobian_matrix(gens, a))


# ---------------------------------------------------------------------------
# Isolated points and the n = 3 identity
# ---------------------------------------------------------------------------

def point_spectrum_membership(R: CyclicModule, a: Sequence) -> bool:
    """Whether ``(I : m_a)`` is strictly larger than ``I``; true exactly at isolated points of V(I)."""
    a = R.point(a)
    I = R.ideal
    Q = ideal_quotient(I, maximal_ideal(I.vars, I.field, a))
    return any(not I.contains(g) for g in Q.gens)


def koszul_first_differential(vars, field: FieldSpec) -> FreeModuleMap:
    """The middle differential ``[[-y,-z,0],[x,0,-z],[0,x,y]]`` of the Koszul complex in 3 variables."""
    x, y, z = MultiPoly.gens(vars, field)
    zero = MultiPoly.zero(vars, field)
    return FreeModuleMap([[-y, -z, zero], [x, zero, -z], [zero, x, y]], vars, field)


def cayley_hamilton_d1_check(R: CyclicModule) -> bool:
    """Check ``d^3 + (2xz - y^2) d = 0`` modulo ``I`` and ``d^2 + (2xz - y^2) = e [x y z]`` over P.

    Here ``d`` is the middle Koszul differential in three variables and
    ``e = (z, -y, x)^T`` is the top one.
    """
    if R.n != 3:
        raise DimensionMismatch("the identity concerns three variables")
    F = R.field
    _no_char_two(F)
    vars = R.vars
    x, y, z = MultiPoly.gens(vars, F)
    zero = MultiPoly.zero(vars, F)
    c = 2 * x * z - y * y
    d = koszul_first_differential(vars, F)
    cI = FreeModuleMap([[c if i == j else zero for j in range(3)] for i in range(3)], vars, F)
    d2 = d @ d
    lhs = d2 @ d
    G = R.ideal.gb()
    for i in range(3):
        for j in range(3):
            v = lhs.entries[i][j] + c * d.entries[i][j]
            if G and normal_form(v, G):
                return False
            if not G and v:
                return False
    top = FreeModuleMap([[z], [-y], [x]], vars, F)
    row = FreeModuleMap([[x, y, z]], vars, F)
    square = top @ row
    for i in range(3):
        for j in range(3):
            if d2.entries[i][j] + cI.entries[i][j] != square.entries[i][j]:
                return False
    return (d @ top).is_zero()


# ---------------------------------------------------------------------------
# Graded pieces of the Koszul complex of the variables on P
# ---------------------------------------------------------------------------

def polynomial_koszul_slice(n: int, degree: int, field: FieldSpec) -> ChainComplex:
    """Internal-degree ``degree`` part of ``Kos(X, P)``: ``C_p = P_{degree-p} ⊗ Λ^p``."""
    from .koszul import ExteriorBasis

    zero, one = field.zero, field.one
    mons = [list(monomials_of_degree(n, degree - p)) if degree - p >= 0 else [] for p in range(n + 1)]
    bases = [ExteriorBasis(n, p) for p in range(n + 1)]
    index = [{(e, S): k for k, (e, S) in enumerate((e, S) for S in bases[p] for e in mons[p])}
             for p in range(n + 1)]
    dims = [len(ix) for ix in index]
    diffs = []
    for p in range(1, n + 1):
        mat = la.zeros(dims[p - 1], dims[p], zero)
        for (e, S), col in index[p].items():
            for s, i in enumerate(S):
                T = S[:s] + S[s + 1:]
                e2 = tuple(x + (1 if k == i else 0) for k, x in enumerate(e))
                row = index[p - 1][(e2, T)]
                mat[row][col] = one if s % 2 == 0 else -one
        diffs.append(mat)
    return ChainComplex(dims, diffs, field)


def polynomial_koszul_exactness(n: int, max_degree: int, field: FieldSpec) -> Dict[int, Tuple[int, ...]]:
    """Homology dimensions of each graded slice up to ``max_degree``."""
    return {deg: homology_dims(polynomial_koszul_slice(n, deg, field)).d for deg in range(max_degree + 1)}
