import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from koszulspec import (
    QQ, ChainComplex, DimensionMismatch, ExteriorBasis, HomologyReport, MatrixTuple, NonCommutingTuple,
    NonZeroComposition, build_koszul, cone, homology_dims, induced_action, koszul_dims,
)
from koszulspec import linalg as la
from koszulspec.koszul import cone_basis_permutation, dimension_inflate, permute_koszul
from koszulspec.suites import les_dimensions, appended_polynomial_dims, random_commuting_tuple, random_poly, VAR_NAMES
from koszulspec.spectra import taylor_spectrum

from oracles import koszul_dims_brute
from strategies import seeds

DIAG_PAIR = MatrixTuple([[[0, 0], [0, 1]], [[0, 0], [0, 2]]])


def zero_tuple(n, dim=1):
    return MatrixTuple([[[0] * dim for _ in range(dim)] for _ in range(n)], QQ, dim)


# ---- basis and types ----------------------------------------------------

@given(st.integers(0, 6), st.integers(0, 6))
def test_exterior_basis_size_and_lookup(n, p):
    B = ExteriorBasis(n, p)
    assert len(B) == (comb(n, p) if p <= n else 0)
    for i, S in enumerate(B):
        assert B.position(S) == i and B.element(i) == S


def test_exterior_basis_is_lex():
    assert list(ExteriorBasis(3, 2)) == [(0, 1), (0, 2), (1, 2)]


def test_non_commuting_rejected():
    with pytest.raises(NonCommutingTuple):
        MatrixTuple([[[0, 1], [0, 0]], [[0, 0], [1, 0]]])


def test_non_square_rejected():
    with pytest.raises(DimensionMismatch):
        MatrixTuple([[[0, 1]]])


def test_chain_complex_shape_checked():
    with pytest.raises(DimensionMismatch):
        ChainComplex([1, 2], [[[1]]])


def test_non_zero_composition_detected():
    C = ChainComplex([1, 1, 1], [[[1]], [[1]]])
    with pytest.raises(NonZeroComposition):
        homology_dims(C)


def test_index_formula():
    assert HomologyReport.from_dims([1, 2, 1]).index == 0
    assert HomologyReport.from_dims([1, 0, 0]).index == -1
    assert HomologyReport.from_dims([3, 5, 1, 4]).index == -3 + 5 - 1 + 4


# ---- homology examples --------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_point_module(n):
    rep = koszul_dims(zero_tuple(n), (0,) * n)
    assert rep.d == tuple(comb(n, j) for j in range(n + 1))
    assert rep.index == 0


def test_point_module_two_vars_index():
    rep = koszul_dims(zero_tuple(2))
    assert rep.d == (1, 2, 1) and rep.index == 0


def test_diag_pair_at_origin_matches_rank_oracle():
    rep = koszul_dims(DIAG_PAIR, (0, 0))
    assert list(rep.d) == koszul_dims_brute(DIAG_PAIR.mats, (0, 0), QQ)
    assert rep.d == (1, 2, 1)


def test_diag_pair_off_spectrum_is_exact():
    assert koszul_dims(DIAG_PAIR, (1, 1)).d == (0, 0, 0)


def test_empty_tuple_convention():
    x = MatrixTuple([], QQ, dim=3)
    assert koszul_dims(x).d == (3,)
    assert taylor_spectrum(x).points == ((),)
    assert taylor_spectrum(MatrixTuple([], QQ, dim=0)).points == ()


def test_koszul_of_single_matrix_is_kernel_and_cokernel():
    x = MatrixTuple([[[0, 1], [0, 0]]])
    assert koszul_dims(x).d == (1, 1)


# ---- cone ---------------------------------------------------------------

def test_cone_basis_permutation_is_bijection():
    for n in range(1, 5):
        for p in range(n + 1):
            perm = cone_basis_permutation(n, p)
            assert sorted(perm) == list(range(comb(n, p)))


def test_cone_matches_koszul_example():
    x = MatrixTuple([[[1, 1], [0, 1]], [[2, 3], [0, 2]], [[0, 5], [0, 0]]])
    lhs = cone(x.mats[-1], build_koszul(x.drop_last()))
    rhs = permute_koszul(build_koszul(x), 3, 2)
    assert lhs.dims == rhs.dims and lhs.diffs == rhs.diffs


def test_cone_homology_dimension_law():
    x = MatrixTuple([[[0, 1, 0], [0, 0, 0], [0, 0, 1]], [[0, 0, 0], [0, 0, 0], [0, 0, 3]]])
    C = build_koszul(x.drop_last())
    t = x.mats[-1]
    K = cone(t, C)
    d_cone = homology_dims(K).d
    pred = []
    for p in range(len(K.dims)):
        nul = cor = 0
        if p >= 1:
            A = induced_action(t, C, p - 1)
            nul = len(A) - (la.rank(A) if A else 0)
        if p < len(C.dims):
            A = induced_action(t, C, p)
            cor = len(A) - (la.rank(A) if A else 0)
        pred.append(nul + cor)
    assert list(d_cone) == pred


def test_cone_rejects_non_chain_map():
    C = build_koszul(MatrixTuple([[[0, 1], [0, 0]]]))
    with pytest.raises(NonCommutingTuple):
        cone([[0, 0], [1, 0]], C)


# ---- dimension inflation ------------------------------------------------

def test_inflate_base_case():
    assert dimension_inflate([1], 0, 1) == [1, 1]


def test_inflate_one_step():
    assert dimension_inflate([2, 3, 1], 2, 3) == [2, 5, 4, 1]


def test_inflate_two_steps_gives_binomials():
    assert dimension_inflate([1], 0, 4) == [1, 4, 6, 4, 1]


def test_inflate_rejects_downward():
    with pytest.raises(ValueError):
        dimension_inflate([1, 1], 1, 0)


# ---- properties ---------------------------------------------------------

def _instance(seed, nrange=(1, 3), drange=(1, 4)):
    rng = random.Random(seed)
    n, dim = rng.randint(*nrange), rng.randint(*drange)
    x = random_commuting_tuple(rng, n, dim)
    spec = taylor_spectrum(x).points
    a = rng.choice(spec) if spec and rng.random() < 0.7 else tuple(QQ(rng.randint(-2, 2)) for _ in range(n))
    return rng, x, a


@settings(max_examples=40)
@given(seeds)
def test_differential_squares_to_zero(seed):
    _, x, a = _instance(seed)
    C = build_koszul(x, a)
    assert C.composition_vanishes()
    if x.n >= 2:
        assert cone(x.shifted(a).mats[-1], build_koszul(x.shifted(a).drop_last())).composition_vanishes()


@settings(max_examples=40)
@given(seeds)
def test_euler_characteristic_and_zero_index(seed):
    _, x, a = _instance(seed)
    C = build_koszul(x, a)
    rep = homology_dims(C)
    assert sum((-1) ** p * d for p, d in enumerate(rep.d)) == sum((-1) ** p * d for p, d in enumerate(C.dims))
    assert rep.index == 0


@settings(max_examples=40)
@given(seeds)
def test_homology_matches_independent_assembly(seed):
    _, x, a = _instance(seed)
    assert list(koszul_dims(x, a).d) == koszul_dims_brute(x.mats, a, QQ)


@settings(max_examples=30)
@given(seeds)
def test_cone_identity(seed):
    _, x, a = _instance(seed, (2, 4), (1, 3))
    y = x.shifted(a)
    lhs = cone(y.mats[-1], build_koszul(y.drop_last()))
    rhs = permute_koszul(build_koszul(y), x.n, x.dim)
    assert lhs.dims == rhs.dims and lhs.diffs == rhs.diffs


@settings(max_examples=30)
@given(seeds)
def test_long_exact_sequence_law(seed):
    _, x, a = _instance(seed, (2, 3))
    assert list(koszul_dims(x, a).d) == les_dimensions(x, a)


@settings(max_examples=30)
@given(seeds)
def test_annihilation(seed):
    _, x, a = _instance(seed)
    y = x.shifted(a)
    C = build_koszul(y)
    for i in range(x.n):
        for p in range(x.n + 1):
            assert la.is_zero(induced_action(y.mats[i], C, p))


def _nilpotent_tuple(rng, n, dim):
    """Polynomials without constant term in one strictly upper-triangular seed: spectrum {0}."""
    from koszulspec.spectra import apply_polynomial
    seed_mat = [[QQ(rng.randint(-2, 2)) if j > i else QQ(0) for j in range(dim)] for i in range(dim)]
    base = MatrixTuple([seed_mat])
    mats = [apply_polynomial(base, random_poly(rng, ("t",), QQ, max_deg=3, constant=False)) for _ in range(n)]
    return MatrixTuple(mats, QQ, dim)


@settings(max_examples=40)
@given(seeds)
def test_suffix_vanishing_for_single_point_support(seed):
    rng = random.Random(seed)
    x = _nilpotent_tuple(rng, rng.randint(1, 4), rng.randint(1, 5))
    assert taylor_spectrum(x).points == ((QQ(0),) * x.n,)
    d = koszul_dims(x).d
    first_zero = next((p for p, v in enumerate(d) if v == 0), len(d))
    assert all(v == 0 for v in d[first_zero:])


@settings(max_examples=30)
@given(seeds)
def test_inflation_law_for_appended_polynomial(seed):
    rng = random.Random(seed)
    n, dim = rng.randint(1, 3), rng.randint(1, 4)
    x = random_commuting_tuple(rng, n, dim)
    spec = taylor_spectrum(x).points
    a = rng.choice(spec)
    q = random_poly(rng, VAR_NAMES[:n], QQ, max_deg=3)
    measured, predicted = appended_polynomial_dims(x, a, q)
    assert measured == predicted
    assert sum((-1) ** (p + 1) * v for p, v in enumerate(measured)) == 0
