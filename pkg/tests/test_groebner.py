import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from koszulspec import (
    GREVLEX, INFINITE, LEX, QQ, EmptyVariety, Ideal, MonomialOrder, MultiPoly, buchberger, divide,
    ideal_power_sum, ideal_quotient, intersect, is_groebner, krull_dim, maximal_ideal, normal_form,
    parse_poly, quotient_dim, standard_monomials,
)
from koszulspec.groebner import GREVLEX as _G

from oracles import all_reductions, is_reduced_against, truncated_quotient_dim
from strategies import seeds

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text, vars=XY):
    return parse_poly(text, vars, QQ)


def I(*gens, vars=XY):
    return Ideal.parse(gens, vars)


# ---- orders -------------------------------------------------------------

def test_grevlex_ranks_degree_first_then_reverse_lex():
    k = GREVLEX.key
    assert k((0, 0, 2)) > k((1, 0, 0))
    assert k((1, 0, 1)) < k((0, 2, 0))   # x z < y^2 in grevlex
    assert k((0, 0, 0)) < k((0, 0, 1))


def test_lex_order():
    assert LEX.key((1, 0)) > LEX.key((0, 5))


def test_block_order_parse():
    o = MonomialOrder.parse("block(1)")
    assert o.key((1, 0, 0)) > o.key((0, 3, 3))


# ---- normal form --------------------------------------------------------

def test_member_reduces_to_zero():
    G = I("x^2 - y", "y^2 - x").gb()
    f = P("x^2 - y") * P("x*y + 3") + P("y^2 - x") * P("x - 2")
    assert normal_form(f, G).is_zero()


def test_unit_not_reduced_by_x():
    assert normal_form(P("1"), [P("x")]) == P("1")


def test_normal_form_matches_exhaustive_reduction():
    G = I("x^2 - y", "y^2 - x").gb()
    f = P("x^2*y")
    finals = all_reductions(f, G, _G.key)
    assert finals == {normal_form(f, G)}   # confluence on a Groebner basis
    assert is_reduced_against(normal_form(f, G), G, _G.key)


def test_divide_reconstructs():
    G = [P("x*y - 1"), P("y^2 - 1")]
    f = P("x^2*y + x*y^2 + y^2")
    quots, rem = divide(f, G)
    assert sum((q * g for q, g in zip(quots, G)), rem) == f


# ---- buchberger ---------------------------------------------------------

def test_gb_of_principal_monomial():
    assert buchberger([P("x")]) == [P("x")]


def test_gb_of_principal_hypersurface():
    f = P("x*y + y*z + z*x", XYZ)
    assert buchberger([f]) == [f]


def test_gb_criterion_and_membership():
    gens = [P("x^2 - y"), P("y^2 - x")]
    G = buchberger(gens)
    assert is_groebner(G)
    assert all(normal_form(g, G).is_zero() for g in gens)
    # every basis element lies in the ideal: check with an independent lex basis
    Glex = buchberger(gens, LEX)
    assert all(normal_form(g, Glex, LEX).is_zero() for g in G)


def test_gb_drops_zero_generators():
    assert buchberger([P("0"), P("x")]) == [P("x")]


def test_gb_reduced_and_monic():
    G = buchberger([P("2*x^2 - 2*y"), P("3*y^2 - 3*x"), P("x^2*y - y^2")])
    for g in G:
        lt = max(g.terms, key=GREVLEX.key)
        assert g.terms[lt] == 1
        assert is_reduced_against(g, [h for h in G if h is not g], GREVLEX.key)


# ---- counting -----------------------------------------------------------

@pytest.mark.parametrize("r", range(1, 7))
def test_power_of_maximal_ideal_dimension(r):
    J = ideal_power_sum(Ideal([], XY, QQ), r)
    assert quotient_dim(J) == comb(r + 1, 2)


def test_maximal_ideal_power_three_in_two_vars():
    assert quotient_dim(ideal_power_sum(Ideal([], XY, QQ), 3)) == 6


def test_point_quotient_dim():
    assert quotient_dim(I("x", vars=("x",))) == 1


def test_cusp_plus_cube_matches_enumeration():
    J = I("y^2 - x^3") + I("x^3", "x^2*y", "x*y^2", "y^3")
    assert quotient_dim(J) == truncated_quotient_dim(J.gens, 2, 6, QQ)


def test_power_sum_of_zero_ideal():
    J = ideal_power_sum(Ideal([], XY, QQ), 2)
    assert J.equals(I("x^2", "x*y", "y^2"))


def test_power_sum_r1_residue_field():
    J = ideal_power_sum(I("x*y + y - x^2"), 1)
    assert quotient_dim(J) == 1


def test_cusp_samuel_value_at_four():
    assert quotient_dim(ideal_power_sum(I("y^2 - x^3"), 4)) == 7


def test_infinite_quotient():
    assert quotient_dim(I("x*y")) is INFINITE


def test_standard_monomials_of_point_square():
    assert sorted(standard_monomials(I("x^2", "x*y", "y^2"))) == [(0, 0), (0, 1), (1, 0)]


# ---- ideal arithmetic ---------------------------------------------------

def test_quotient_by_unit_ideal():
    J = I("x^2 - x", "x*y")
    assert ideal_quotient(J, I("1")).equals(J)


def test_quotient_of_square_by_variable():
    assert ideal_quotient(I("x^2", vars=("x",)), I("x", vars=("x",))).equals(I("x", vars=("x",)))


def test_quotient_detects_isolated_point():
    J = I("x^2 - x", "x*y")
    Q = ideal_quotient(J, I("x - 1", "y"))
    assert P("x") in Q and P("x") not in J
    assert all(g in Q for g in J.gens)


def test_intersection():
    K = intersect(I("x"), I("y"))
    assert K.equals(I("x*y"))


def test_maximal_ideal_at_point():
    m = maximal_ideal(XY, QQ, (2, 3))
    assert P("x^2 - y - 1") in m


@pytest.mark.parametrize("gens,vars,expected", [
    ([], XYZ, 3),
    (["x*y + y*z + z*x"], XYZ, 2),
    (["x", "y"], XY, 0),
    (["y^2 - x^3"], XY, 1),
    (["x*z", "y*z"], XYZ, 2),
])
def test_krull_dim(gens, vars, expected):
    J = Ideal.parse(gens, vars) if gens else Ideal([], vars, QQ)
    assert krull_dim(J) == expected


def test_krull_dim_unit_ideal():
    with pytest.raises(EmptyVariety):
        krull_dim(I("x", "x - 1"))


# ---- properties ---------------------------------------------------------

def _random_ideal(rng, k=None):
    from koszulspec.suites import random_poly
    k = k or rng.randint(1, 3)
    return [random_poly(rng, XY, QQ, max_deg=3, max_terms=3) for _ in range(k)]


@settings(max_examples=30)
@given(seeds)
def test_gb_unique_under_permutation(seed):
    rng = random.Random(seed)
    gens = [g for g in _random_ideal(rng) if g]
    if not gens:
        return
    G1 = buchberger(gens)
    perm = gens[:]
    rng.shuffle(perm)
    assert buchberger(perm) == G1
    assert is_groebner(G1)
    assert all(normal_form(g, G1).is_zero() for g in gens)


@settings(max_examples=30)
@given(seeds)
def test_membership_of_combinations(seed):
    from koszulspec.suites import random_poly
    rng = random.Random(seed)
    gens = [g for g in _random_ideal(rng) if g]
    if not gens:
        return
    f = sum((random_poly(rng, XY, QQ, max_deg=2, max_terms=3) * g for g in gens), MultiPoly.zero(XY))
    G = buchberger(gens)
    assert normal_form(f, G).is_zero()
    # adding a non-member remainder stays outside the ideal
    h = P("x^5*y^7 + 1")
    if normal_form(h, G):
        assert normal_form(f + h, G) == normal_form(h, G)


@given(st.integers(1, 3), st.integers(1, 6))
def test_samuel_of_affine_space(n, r):
    vars = XYZ[:n]
    assert quotient_dim(ideal_power_sum(Ideal([], vars, QQ), r)) == comb(r + n - 1, n)
