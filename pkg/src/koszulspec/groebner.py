"""Gröbner bases for ideals and for submodules of free modules.

Internally a module element is a dict ``{(position, exponent): coeff}``; an
ideal element is the special case where every position is 0. One Buchberger
routine serves both, parametrised by a term order on ``(position, exponent)``
pairs.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, EmptyVariety
from .field import FieldSpec
from .poly import Exponent, MultiPoly, grevlex_key, monomials_of_degree

Term = Tuple[int, Exponent]
Vec = Dict[Term, object]


# ---------------------------------------------------------------------------
# Orders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """Global monomial order: ``grevlex``, ``lex`` or ``block``.

    ``block`` compares the first ``elim`` variables by grevlex and breaks ties
    with grevlex on the remaining ones, so it eliminates the first block.
    """

    kind: str = "grevlex"
    elim: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: Exponent):
        if self.kind == "grevlex":
            return grevlex_key(e)
        if self.kind == "lex":
            return e
        k = self.elim
        return (grevlex_key(e[:k]), grevlex_key(e[k:]))

    def term_key(self, t: Term):
        return self.key(t[1])

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        t = text.strip().lower()
        if t.startswith("block"):
            return cls("block", int(t[5:].strip("():") or 1))
        return cls(t)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class ModuleOrder:
    """Term order on a free module; ``term_key`` maps (pos, exp) to a sortable key."""

    def term_key(self, t: Term):  # pragma: no cover - interface
        raise NotImplementedError


@dataclass(frozen=True)
class POT(ModuleOrder):
    """Position over term; basis vector 0 is the largest."""

    base: MonomialOrder = GREVLEX

    def term_key(self, t: Term):
        return (-t[0], self.base.key(t[1]))


@dataclass(frozen=True)
class TOP(ModuleOrder):
    base: MonomialOrder = GREVLEX

    def term_key(self, t: Term):
        return (self.base.key(t[1]), -t[0])


class SchreyerOrder(ModuleOrder):
    """Order induced on ``P^m`` by the lead terms of ``m`` vectors of another module.

    ``x^a e_i`` is compared through ``x^a * LT(g_i)`` in the previous order;
    ties go to the smaller index.
    """

    def __init__(self, previous: ModuleOrder, leads: Sequence[Term]):
        self.previous = previous
        self.leads = tuple(leads)
        self._cache: Dict[Term, tuple] = {}

    def term_key(self, t: Term):
        k = self._cache.get(t)
        if k is None:
            lp, le = self.leads[t[0]]
            k = (self.previous.term_key((lp, tuple(a + b for a, b in zip(le, t[1])))), -t[0])
            self._cache[t] = k
        return k


def as_module_order(order) -> ModuleOrder:
    return POT(order) if isinstance(order, MonomialOrder) else order


# ---------------------------------------------------------------------------
# Vector kernel
# ---------------------------------------------------------------------------

def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _esub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _eadd(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def lead(v: Vec, order: ModuleOrder) -> Term:
    return max(v, key=order.term_key)


def _axpy(p: Vec, c, shift: Exponent, g: Vec) -> None:
    """In place ``p -= c * x^shift * g``."""
    for (gp, ge), gc in g.items():
        t = (gp, _eadd(ge, shift))
        v = p.get(t)
        if v is None:
            p[t] = -c * gc
        else:
            v = v - c * gc
            if v:
                p[t] = v
            else:
                del p[t]


def reduce_vec(v: Vec, basis: Sequence[Vec], leads: Sequence[Term], order: ModuleOrder,
               record: bool = False, full: bool = True):
    """Division of ``v`` by ``basis``.

    Returns ``(remainder, quotients)``; ``quotients[i]`` is a dict
    exponent -> coeff with ``v = sum q_i * basis_i + remainder``. With
    ``full=False`` only the lead term is reduced.
    """
    p = dict(v)
    rem: Vec = {}
    quots: List[Dict[Exponent, object]] = [dict() for _ in basis] if record else []
    lcs = [b[t] for b, t in zip(basis, leads)]
    tkey = order.term_key
    while p:
        t = max(p, key=tkey)
        c = p[t]
        pos, e = t
        for i, (lp, le) in enumerate(leads):
            if lp == pos and _divides(le, e):
                f = c / lcs[i]
                shift = _esub(e, le)
                _axpy(p, f, shift, basis[i])
                if record:
                    q = quots[i]
                    s = q.get(shift)
                    s = f if s is None else s + f
                    if s:
                        q[shift] = s
                    else:
                        del q[shift]
                break
        else:
            if not full:
                rem.update(p)
                break
            rem[t] = c
            del p[t]
    return rem, quots


def _spair(gi: Vec, ti: Term, gj: Vec, tj: Term) -> Tuple[Vec, Exponent, Exponent]:
    L = _lcm(ti[1], tj[1])
    si, sj = _esub(L, ti[1]), _esub(L, tj[1])
    s: Vec = {}
    _axpy(s, -(1 / gi[ti]), si, gi)
    _axpy(s, 1 / gj[tj], sj, gj)
    return s, si, sj


def buchberger_vecs(vecs: Sequence[Vec], order: ModuleOrder, rank_one: bool = False) -> List[Vec]:
    """Reduced Gröbner basis of the span of ``vecs`` (monic, sorted by lead, largest first)."""
    G: List[Vec] = []
    leads: List[Term] = []
    for v in vecs:
        if v:
            G.append(dict(v))
            leads.append(lead(v, order))
    tkey = order.term_key
    pending = set()
    heap: list = []
    counter = 0

    def push(i, j):
        nonlocal counter
        pending.add((i, j))
        heapq.heappush(heap, (tkey((leads[i][0], _lcm(leads[i][1], leads[j][1]))), counter, i, j))
        counter += 1

    for i, j in combinations(range(len(G)), 2):
        if leads[i][0] == leads[j][0]:
            push(i, j)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        ti, tj = leads[i], leads[j]
        L = _lcm(ti[1], tj[1])
        if rank_one and all(min(a, b) == 0 for a, b in zip(ti[1], tj[1])):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j) or leads[k][0] != ti[0]:
                continue
            if _divides(leads[k][1], L):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        s, _, _ = _spair(G[i], ti, G[j], tj)
        r, _ = reduce_vec(s, G, leads, order)
        if r:
            n = len(G)
            G.append(r)
            lt = lead(r, order)
            leads.append(lt)
            for k in range(n):
                if leads[k][0] == lt[0]:
                    push(k, n)
    return _reduce_basis(G, leads, order)


def _reduce_basis(G: List[Vec], leads: List[Term], order: ModuleOrder) -> List[Vec]:
    keep = []
    for i, (p, e) in enumerate(leads):
        redundant = False
        for j, (q, f) in enumerate(leads):
            if j != i and q == p and _divides(f, e) and (f != e or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    G = [G[i] for i in keep]
    leads = [leads[i] for i in keep]
    out = []
    for i in range(len(G)):
        others = G[:i] + G[i + 1:]
        olds = leads[:i] + leads[i + 1:]
        r, _ = reduce_vec(G[i], others, olds, order)
        inv = 1 / r[leads[i]]
        out.append({t: c * inv for t, c in r.items()})
    out.sort(key=lambda v: order.term_key(lead(v, order)), reverse=True)
    return out


def is_groebner_vecs(vecs: Sequence[Vec], order: ModuleOrder) -> bool:
    """Buchberger criterion: every S-vector reduces to zero."""
    G = [v for v in vecs if v]
    leads = [lead(v, order) for v in G]
    for i, j in combinations(range(len(G)), 2):
        if leads[i][0] != leads[j][0]:
            continue
        s, _, _ = _spair(G[i], leads[i], G[j], leads[j])
        r, _ = reduce_vec(s, G, leads, order)
        if r:
            return False
    return True


# ---------------------------------------------------------------------------
# Polynomial-level API
# ---------------------------------------------------------------------------

def _to_vec(f: MultiPoly) -> Vec:
    return {(0, e): c for e, c in f.terms.items()}


def _from_vec(v: Vec, vars, field: FieldSpec) -> MultiPoly:
    return MultiPoly._raw(tuple(vars), {e: c for (_, e), c in v.items()}, field)


def lead_exponent(f: MultiPoly, order: MonomialOrder = GREVLEX) -> Exponent:
    return max(f.terms, key=order.key)


def normal_form(f: MultiPoly, G: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> MultiPoly:
    """Remainder of ``f`` on division by ``G``; no remaining term is divisible by a lead term."""
    G = [g for g in G if g]
    mo = POT(order)
    vecs = [_to_vec(g) for g in G]
    leads = [(0, lead_exponent(g, order)) for g in G]
    r, _ = reduce_vec(_to_vec(f), vecs, leads, mo)
    return _from_vec(r, f.vars, f.field)


def divide(f: MultiPoly, G: Sequence[MultiPoly], order: MonomialOrder = GREVLEX):
    """``(quotients, remainder)`` with ``f = sum q_i G_i + remainder``."""
    mo = POT(order)
    vecs = [_to_vec(g) for g in G]
    idx = [i for i, g in enumerate(G) if g]
    leads = [(0, lead_exponent(G[i], order)) for i in idx]
    r, qs = reduce_vec(_to_vec(f), [vecs[i] for i in idx], leads, mo, record=True)
    quots = [MultiPoly.zero(f.vars, f.field) for _ in G]
    for k, i in enumerate(idx):
        quots[i] = MultiPoly._raw(f.vars, qs[k], f.field)
    return quots, _from_vec(r, f.vars, f.field)


@lru_cache(maxsize=512)
def _gb_cached(gens: Tuple[MultiPoly, ...], order: MonomialOrder) -> Tuple[MultiPoly, ...]:
    vars, field = gens[0].vars, gens[0].field
    vecs = buchberger_vecs([_to_vec(g) for g in gens], POT(order), rank_one=True)
    return tuple(_from_vec(v, vars, field) for v in vecs)


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> List[MultiPoly]:
    """Reduced Gröbner basis, monic, sorted by decreasing lead monomial. Zero inputs are dropped."""
    gens = tuple(g for g in gens if g)
    if not gens:
        return []
    return list(_gb_cached(gens, order))


def is_groebner(G: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> bool:
    return is_groebner_vecs([_to_vec(g) for g in G], POT(order))


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITE")

    def __gt__(self, other):
        return other is not self

    def __lt__(self, other):
        return False


INFINITE = _Infinite()


@dataclass(frozen=True)
class Ideal:
    """Ideal of ``k[vars]`` given by generators; GBs are memoised per order."""

    gens: Tuple[MultiPoly, ...]
    vars: Tuple[str, ...]
    field: FieldSpec = dc_field(default_factory=FieldSpec)

    def __init__(self, gens: Sequence[MultiPoly], vars: Sequence[str] | None = None,
                 field: FieldSpec | None = None):
        gens = tuple(gens)
        if vars is None:
            if not gens:
                raise ValueError("need vars for an ideal without generators")
            vars = gens[0].vars
        if field is None:
            field = gens[0].field if gens else FieldSpec()
        for g in gens:
            if g.vars != tuple(vars) or g.field != field:
                raise DimensionMismatch("generator lives in a different ring")
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "field", field)

    @classmethod
    def parse(cls, texts: Sequence[str], vars: Sequence[str], field: FieldSpec | None = None):
        from .parser import parse_poly

        field = field or FieldSpec()
        return cls([parse_poly(t, vars, field) for t in texts], vars, field)

    @property
    def n(self) -> int:
        return len(self.vars)

    def gb(self, order: MonomialOrder = GREVLEX) -> List[MultiPoly]:
        return buchberger(self.gens, order)

    def is_unit(self) -> bool:
        G = self.gb()
        return any(g.is_constant() and g for g in G)

    def contains(self, f: MultiPoly) -> bool:
        return normal_form(f, self.gb()).is_zero()

    def reduce(self, f: MultiPoly) -> MultiPoly:
        return normal_form(f, self.gb())

    def __contains__(self, f):
        return self.contains(f)

    def equals(self, other: "Ideal") -> bool:
        return self.gb() == other.gb()

    def translate(self, a: Sequence) -> "Ideal":
        return Ideal([g.translate(a) for g in self.gens], self.vars, self.field)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.gens + other.gens, self.vars, self.field)

    def lead_exponents(self, order: MonomialOrder = GREVLEX) -> List[Exponent]:
        return [lead_exponent(g, order) for g in self.gb(order)]

    def vanishes_at(self, a: Sequence) -> bool:
        return all(not g.eval(a) for g in self.gens)

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.gens) + ">"


def maximal_ideal(vars, field: FieldSpec, a: Sequence | None = None) -> Ideal:
    """The ideal of the point ``a`` (the origin by default)."""
    xs = MultiPoly.gens(vars, field)
    if a is not None:
        xs = [x - field(c) for x, c in zip(xs, a)]
    return Ideal(xs, vars, field)


def ideal_power_sum(I: Ideal, r: int) -> Ideal:
    """``I + t^r`` where ``t`` is the ideal of the origin."""
    if r < 1:
        raise ValueError("r must be >= 1")
    mons = [MultiPoly.monomial(e, I.vars, I.field) for e in monomials_of_degree(I.n, r)]
    return Ideal(I.gens + tuple(mons), I.vars, I.field)


def standard_monomials(I: Ideal, order: MonomialOrder = GREVLEX) -> List[Exponent]:
    """Monomials outside the lead-term ideal, graded then lex. Raises if infinitely many."""
    leads = I.lead_exponents(order)
    n = I.n
    if any(sum(e) == 0 for e in leads):
        return []
    bounds = []
    for i in range(n):
        pure = [e[i] for e in leads if e[i] > 0 and sum(e) == e[i]]
        if not pure:
            from .errors import InfiniteDimensional

            raise InfiniteDimensional(f"no pure power of {I.vars[i]} among lead terms")
        bounds.append(min(pure))
    out = [e for e in product(*(range(b) for b in bounds))
           if not any(_divides(l, e) for l in leads)]
    out.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return out


def quotient_dim(I: Ideal, order: MonomialOrder = GREVLEX):
    """``dim_k P/I``: a natural number, or :data:`INFINITE`."""
    from .errors import InfiniteDimensional

    try:
        return len(standard_monomials(I, order))
    except InfiniteDimensional:
        return INFINITE


def _with_extra_var(f: MultiPoly, new_vars) -> MultiPoly:
    return f.embed(new_vars, offset=1)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    if not I.gens or not J.gens:
        return Ideal([], I.vars, I.field)
    tv = "_t"
    while tv in I.vars:
        tv = "_" + tv
    nv = (tv,) + I.vars
    t = MultiPoly.variable(0, nv, I.field)
    one = MultiPoly.constant(1, nv, I.field)
    gens = [t * _with_extra_var(g, nv) for g in I.gens]
    gens += [(one - t) * _with_extra_var(g, nv) for g in J.gens]
    G = buchberger(gens, MonomialOrder("block", 1))
    keep = [g.restrict(I.vars, offset=1) for g in G if all(e[0] == 0 for e in g.terms)]
    return Ideal(keep, I.vars, I.field)


def exact_division(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    (q,), r = divide(f, [g])
    if r:
        raise ArithmeticError(f"{g} does not divide {f}")
    return q


def quotient_by_element(I: Ideal, g: MultiPoly) -> Ideal:
    """``(I : g)``."""
    if not g:
        return Ideal([MultiPoly.constant(1, I.vars, I.field)], I.vars, I.field)
    K = intersect(I, Ideal([g], I.vars, I.field))
    return Ideal([exact_division(h, g) for h in K.gb()], I.vars, I.field)


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J) = {f : f J ⊆ I}`` as the intersection of ``(I : g)`` over generators of J."""
    result: Optional[Ideal] = None
    for g in J.gens:
        if not g:
            continue
        Q = quotient_by_element(I, g)
        result = Q if result is None else intersect(result, Q)
    if result is None:
        return Ideal([MultiPoly.constant(1, I.vars, I.field)], I.vars, I.field)
    return Ideal(result.gb(), I.vars, I.field)


def krull_dim(I: Ideal) -> int:
    """Largest set of variables containing no lead monomial's support."""
    if I.is_unit():
        raise EmptyVariety("the unit ideal defines the empty variety")
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in I.lead_exponents()]
    n = I.n
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0
