"""Seeded instance generators and the named verification suites."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Callable, Dict, List, Sequence

from . import linalg as la
from .field import QQ, FieldSpec
from .groebner import Ideal
from .koszul import (MatrixTuple, build_koszul, cone, dimension_inflate, homology_dims,
                     induced_action, koszul_dims, permute_koszul)
from .poly import MultiPoly, monomials_below, monomials_of_degree
from .spectra import (apply_polynomial, apply_polynomial_tuple, check_projection,
                      check_spectral_mapping, taylor_spectrum)
from .variety import (CyclicModule, inflated_index, koszul_dims_direct_zero_dim, samuel_values,
                      serre_check, tor_dims_at_point, tor_polynomial)

VAR_NAMES = ("x", "y", "z", "w", "u", "v")


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def random_poly(rng: random.Random, vars, field: FieldSpec = QQ, max_deg: int = 3,
                max_terms: int = 4, constant: bool = True, coeff: int = 3) -> MultiPoly:
    n = len(vars)
    mons = [e for e in monomials_below(n, max_deg + 1) if constant or any(e)]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = rng.choice(mons)
        terms[e] = rng.randint(-coeff, coeff)
    return MultiPoly(vars, terms, field)


def random_triangular(rng: random.Random, dim: int, field: FieldSpec = QQ, spread: int = 2) -> list:
    return [[field(rng.randint(-spread, spread)) if j >= i else field.zero for j in range(dim)]
            for i in range(dim)]


def random_unimodular(rng: random.Random, dim: int, field: FieldSpec = QQ) -> list:
    """Product of a few elementary matrices; small entries, determinant 1."""
    m = la.identity(dim, field.zero, field.one)
    if dim < 2:
        return m
    for _ in range(dim + 1):
        i, j = rng.sample(range(dim), 2)
        c = field(rng.choice([-1, 1]))
        m = [list(r) for r in m]
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


def random_commuting_tuple(rng: random.Random, n: int, dim: int, field: FieldSpec = QQ,
                           conjugate: bool = True) -> MatrixTuple:
    """Polynomials (degree <= 2) in one upper-triangular seed, optionally conjugated."""
    T = random_triangular(rng, dim, field)
    seed_tuple = MatrixTuple([T], field, dim, check=False)
    mats = []
    for _ in range(n):
        q = random_poly(rng, ("t",), field, max_deg=2, max_terms=3)
        mats.append(apply_polynomial(seed_tuple, q))
    if conjugate and dim > 1:
        S = random_unimodular(rng, dim, field)
        Si = la.inverse(S, field.zero, field.one)
        mats = [la.matmul(la.matmul(S, m, field.zero, dim), Si, field.zero, dim) for m in mats]
    return MatrixTuple(mats, field, dim)


def random_zero_dim_ideal(rng: random.Random, n: int, field: FieldSpec = QQ) -> Ideal:
    """Pure powers ``X_i^{k_i}`` and a few mixed monomials, perturbed by terms vanishing at 0.

    Pure-power generators only receive terms of lower total degree, so their
    grevlex leads stay pure powers and the quotient is finite-dimensional.
    """
    vars = VAR_NAMES[:n]
    gens = []

    def perturb(terms, k):
        lower = [m for m in monomials_below(n, k) if any(m)]
        for _ in range(rng.randint(0, 2)):
            if lower:
                terms[rng.choice(lower)] = rng.randint(-2, 2)
        return MultiPoly(vars, terms, field)

    for i in range(n):
        k = rng.randint(2, 4) if rng.random() < 0.8 else 1
        e = tuple(k if j == i else 0 for j in range(n))
        gens.append(perturb({e: 1}, k))
    if n >= 2:
        mixed = [m for d in (2, 3) for m in monomials_of_degree(n, d) if sum(1 for x in m if x) >= 2]
        for _ in range(rng.randint(0, 3)):
            m = rng.choice(mixed)
            gens.append(perturb({m: 1}, sum(m)) if rng.random() < 0.5 else MultiPoly(vars, {m: 1}, field))
    return Ideal(gens, vars, field)


def rational_points(I: Ideal) -> list:
    """Rational points of a zero-dimensional V(I) (empty if they are not all rational)."""
    from .errors import SpectrumNotSplit
    from .variety import multiplication_matrices

    x, _ = multiplication_matrices(I)
    try:
        return list(taylor_spectrum(x).points)
    except SpectrumNotSplit:
        return []


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

@dataclass
class InstanceResult:
    index: int
    passed: bool
    detail: dict = dc_field(default_factory=dict)


@dataclass
class SuiteReport:
    name: str
    seed: int
    results: List[InstanceResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def count(self) -> int:
        return len(self.results)

    @property
    def failures(self) -> List[InstanceResult]:
        return [r for r in self.results if not r.passed]


def _fmt_pts(points, F):
    return [[F.format(c) for c in p] for p in points]


def suite_smt(seed: int = 7, count: int = 25) -> SuiteReport:
    """Spectral mapping on tuples that are polynomials in a common triangular seed."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n, dim, m = rng.randint(1, 3), rng.randint(1, 4), rng.randint(1, 3)
        x = random_commuting_tuple(rng, n, dim)
        qs = [random_poly(rng, VAR_NAMES[:n], x.field, max_deg=3) for _ in range(m)]
        rep = check_spectral_mapping(x, qs)
        out.append(InstanceResult(k, rep.equal, {
            "n": n, "dim": dim, "q": [str(q) for q in qs],
            "spectrum_of_image": _fmt_pts(rep.left, x.field),
            "image_of_spectrum": _fmt_pts(rep.right, x.field)}))
    return SuiteReport("smt", seed, out)


def suite_projection(seed: int = 7, count: int = 25) -> SuiteReport:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n, dim = rng.randint(2, 3), rng.randint(1, 4)
        x = random_commuting_tuple(rng, n, dim)
        rep = check_projection(x)
        out.append(InstanceResult(k, rep.equal, {
            "n": n, "dim": dim, "spectrum_of_prefix": _fmt_pts(rep.left, x.field),
            "projected_spectrum": _fmt_pts(rep.right, x.field)}))
    return SuiteReport("projection", seed, out)


def _random_point(rng, x: MatrixTuple):
    spec = taylor_spectrum(x).points
    if spec and rng.random() < 0.75:
        return rng.choice(spec)
    return tuple(x.field(rng.randint(-2, 2)) for _ in range(x.n))


def suite_cone(seed: int = 7, count: int = 25) -> SuiteReport:
    """The Koszul complex of x equals the cone of x_n on that of x' (after reordering the basis)."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n, dim = rng.randint(2, 4), rng.randint(1, 3)
        x = random_commuting_tuple(rng, n, dim)
        a = _random_point(rng, x)
        y = x.shifted(a)
        lhs = cone(y.mats[-1], build_koszul(y.drop_last()))
        rhs = permute_koszul(build_koszul(y), n, dim)
        ok = lhs.dims == rhs.dims and lhs.diffs == rhs.diffs
        out.append(InstanceResult(k, ok, {"n": n, "dim": dim, "dims": lhs.dims}))
    return SuiteReport("cone", seed, out)


def _rank_or_zero(m) -> int:
    return la.rank(m) if m else 0


def les_dimensions(x: MatrixTuple, a) -> List[int]:
    """``nullity(t | H_{p-1}) + corank(t | H_p)`` with ``t = x_n - a_n`` acting on the homology of x'."""
    y = x.shifted(a)
    C = build_koszul(y.drop_last())
    t = y.mats[-1]
    n = x.n
    acts = [induced_action(t, C, p) for p in range(n)]
    pred = []
    for p in range(n + 1):
        nul = 0
        if p >= 1:
            A = acts[p - 1]
            nul = len(A) - _rank_or_zero(A)
        cor = 0
        if p < n:
            A = acts[p]
            cor = len(A) - _rank_or_zero(A)
        pred.append(nul + cor)
    return pred


def suite_les(seed: int = 7, count: int = 25) -> SuiteReport:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n, dim = rng.randint(2, 3), rng.randint(1, 4)
        x = random_commuting_tuple(rng, n, dim)
        a = _random_point(rng, x)
        measured = list(koszul_dims(x, a).d)
        pred = les_dimensions(x, a)
        out.append(InstanceResult(k, measured == pred, {"n": n, "dim": dim, "d": measured, "predicted": pred}))
    return SuiteReport("les", seed, out)


def suite_annihilation(seed: int = 7, count: int = 25) -> SuiteReport:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n, dim = rng.randint(1, 3), rng.randint(1, 4)
        x = random_commuting_tuple(rng, n, dim)
        a = _random_point(rng, x)
        y = x.shifted(a)
        C = build_koszul(y)
        ok = True
        for i in range(n):
            for p in range(n + 1):
                if not la.is_zero(induced_action(y.mats[i], C, p)):
                    ok = False
        out.append(InstanceResult(k, ok, {"n": n, "dim": dim, "d": list(homology_dims(C).d)}))
    return SuiteReport("annihilation", seed, out)


def golden_ideals() -> List[tuple]:
    """``(label, generators, vars)`` for the fixed reference instances."""
    cases = [(f"affine space n={n}", [], VAR_NAMES[:n]) for n in (1, 2, 3)]
    cases += [
        ("hypersurface xy+yz+zx", ["x*y + y*z + z*x"], ("x", "y", "z")),
        ("parabola y-x^2", ["y - x^2"], ("x", "y")),
        ("cusp y^2-x^3", ["y^2 - x^3"], ("x", "y")),
        ("node y^2-x^2-x^3", ["y^2 - x^2 - x^3"], ("x", "y")),
    ]
    cases += [(f"point n={n}", list(VAR_NAMES[:n]), VAR_NAMES[:n]) for n in (1, 2, 3, 4)]
    return cases


def _golden_module(gens, vars) -> CyclicModule:
    return CyclicModule(Ideal.parse(gens, vars) if gens else Ideal([], vars, QQ))


def suite_serre(seed: int = 7, count: int | None = None) -> SuiteReport:
    out = []
    for k, (label, gens, vars) in enumerate(golden_ideals()):
        R = _golden_module(gens, vars)
        rep = serre_check(R, (0,) * R.n)
        out.append(InstanceResult(k, rep.serre_consistent, {
            "label": label, "index": rep.index_at_point, "e": rep.e, "dim": rep.dim_d,
            "samuel_degree": rep.samuel_degree, "leading_difference": rep.leading_difference}))
    return SuiteReport("serre", seed, out)


def suite_dh1(seed: int = 7, count: int | None = None, r_max: int = 5) -> SuiteReport:
    """Tor-polynomial against the Samuel function, and the inflated index closed forms."""
    out = []
    k = 0
    for label, gens, vars in golden_ideals():
        if label.startswith("point"):
            continue
        R = _golden_module(gens, vars)
        origin = (0,) * R.n
        s = samuel_values(R, origin, r_max).values
        tor = tor_polynomial(R, origin, r_max)
        affine = not gens
        expected = [0] * r_max if affine else s
        ok = tor.values == expected and tor.tor0 == s
        infl = [inflated_index(R, origin, r) for r in range(1, r_max + 1)]
        ok = ok and all(i.consistent for i in infl)
        out.append(InstanceResult(k, ok, {"label": label, "samuel": s, "tor_polynomial": tor.values,
                                          "inflated": [i.value for i in infl]}))
        k += 1
    return SuiteReport("dh1", seed, out)


def suite_crosscheck(seed: int = 7, count: int = 20) -> SuiteReport:
    """Resolution pipeline against multiplication-matrix pipeline on zero-dimensional ideals.

    Each ideal is checked at the origin and at one other rational point of
    V(I) when there is one.
    """
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(1, 3)
        I = random_zero_dim_ideal(rng, n)
        R = CyclicModule(I)
        points = [tuple(I.field.zero for _ in range(n))]
        others = [p for p in rational_points(I) if p != points[0]]
        if others:
            points.append(rng.choice(others))
        ok = True
        dims = []
        for a in points:
            t = tor_dims_at_point(R, a)
            tm = tor_dims_at_point(R, a, minimal=True)
            d = koszul_dims_direct_zero_dim(R, a)
            ok = ok and t.d == d.d == tm.d and t.index == 0 and d.index == 0
            dims.append({"point": [I.field.format(c) for c in a], "tor": list(t.d), "direct": list(d.d)})
        out.append(InstanceResult(k, ok, {"ideal": [str(g) for g in I.gens], "points": dims}))
    return SuiteReport("crosscheck", seed, out)


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "smt": suite_smt,
    "projection": suite_projection,
    "cone": suite_cone,
    "les": suite_les,
    "annihilation": suite_annihilation,
    "serre": suite_serre,
    "dh1": suite_dh1,
    "crosscheck": suite_crosscheck,
}


def run_suite(name: str, seed: int = 7, count: int | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    fn = SUITES[name]
    if count is None:
        return fn(seed=seed)
    return fn(seed=seed, count=count)


def appended_polynomial_dims(x: MatrixTuple, a, q: MultiPoly):
    """Measured ``d(z - b)`` and one inflation step of ``d(y)`` for ``y = x - a``, ``z = (y, q(y))``."""
    y = x.shifted(a)
    qy = apply_polynomial(y, q)
    z = MatrixTuple(y.mats + [qy], x.field, x.dim, check=False)
    b = tuple([x.field.zero] * x.n + [q.constant_term()])
    dz = list(koszul_dims(z, b).d)
    dy = list(koszul_dims(y).d) if y.n else [x.dim]
    return dz, dimension_inflate(dy, x.n, x.n + 1)
