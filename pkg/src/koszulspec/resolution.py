"""Polynomial matrices, syzygies and free resolutions of cyclic modules ``P/I``."""
from __future__ import annotations

from typing import List, Sequence

from .errors import CapExceeded, DimensionMismatch
from .field import FieldSpec
from .groebner import (GREVLEX, POT, Ideal, ModuleOrder, SchreyerOrder, Vec, _axpy,
                       _divides, _esub, _lcm, as_module_order, buchberger_vecs,
                       is_groebner_vecs, lead, reduce_vec)
from .poly import MultiPoly


class FreeModuleMap:
    """A ``rows x cols`` matrix of polynomials, i.e. a map ``P^cols -> P^rows``."""

    def __init__(self, entries: Sequence[Sequence[MultiPoly]], vars, field: FieldSpec,
                 rows: int | None = None, cols: int | None = None):
        self.entries = [list(r) for r in entries]
        self.vars = tuple(vars)
        self.field = field
        self.rows = len(self.entries) if rows is None else rows
        self.cols = (len(self.entries[0]) if self.entries else 0) if cols is None else cols
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("ragged polynomial matrix")

    @classmethod
    def from_columns(cls, cols: Sequence[Vec], rows: int, vars, field) -> "FreeModuleMap":
        vars = tuple(vars)
        terms = [[{} for _ in cols] for _ in range(rows)]
        for j, v in enumerate(cols):
            for (pos, e), c in v.items():
                terms[pos][j][e] = c
        entries = [[MultiPoly._raw(vars, t, field) for t in row] for row in terms]
        return cls(entries, vars, field, rows, len(cols))

    @classmethod
    def row(cls, polys: Sequence[MultiPoly]) -> "FreeModuleMap":
        polys = list(polys)
        return cls([polys], polys[0].vars, polys[0].field)

    def column_vecs(self) -> List[Vec]:
        out = []
        for j in range(self.cols):
            v: Vec = {}
            for i in range(self.rows):
                for e, c in self.entries[i][j].terms.items():
                    v[(i, e)] = c
            out.append(v)
        return out

    def column(self, j: int) -> List[MultiPoly]:
        return [self.entries[i][j] for i in range(self.rows)]

    def __matmul__(self, other: "FreeModuleMap") -> "FreeModuleMap":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        zero = MultiPoly.zero(self.vars, self.field)
        out = [[zero] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            for k in range(self.cols):
                a = self.entries[i][k]
                if not a:
                    continue
                for j in range(other.cols):
                    b = other.entries[k][j]
                    if b:
                        out[i][j] = out[i][j] + a * b
        return FreeModuleMap(out, self.vars, self.field, self.rows, other.cols)

    def is_zero(self) -> bool:
        return all(not e for r in self.entries for e in r)

    def evaluate(self, a: Sequence | None = None) -> list:
        """Numeric matrix of values at ``a`` (the origin by default)."""
        if a is None:
            return [[e.constant_term() for e in r] for r in self.entries]
        return [[e.eval(a) for e in r] for r in self.entries]

    def __eq__(self, other):
        return (isinstance(other, FreeModuleMap) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.entries)
        return f"FreeModuleMap({self.rows}x{self.cols}: [{body}])"


def module_gb(M: FreeModuleMap, order=None) -> FreeModuleMap:
    """Reduced Gröbner basis of the column span (position over term by default)."""
    order = as_module_order(order or GREVLEX)
    cols = buchberger_vecs(M.column_vecs(), order, rank_one=(M.rows == 1))
    return FreeModuleMap.from_columns(cols, M.rows, M.vars, M.field)


def is_module_groebner(M: FreeModuleMap, order=None) -> bool:
    return is_groebner_vecs(M.column_vecs(), as_module_order(order or GREVLEX))


def _schreyer_syzygies(cols: Sequence[Vec], order: ModuleOrder, minimal_pairs: bool = True):
    """Syzygies of a Gröbner basis ``cols`` from reductions of its S-vectors.

    Returns ``(syzygies, induced_order)``; the syzygies form a Gröbner basis
    of the kernel with respect to ``induced_order``.
    """
    leads = [lead(c, order) for c in cols]
    induced = SchreyerOrder(order, leads)
    lcs = [c[t] for c, t in zip(cols, leads)]
    out: List[Vec] = []
    for i in range(len(cols)):
        cands = []
        for j in range(i + 1, len(cols)):
            if leads[j][0] == leads[i][0]:
                cands.append((j, _esub(_lcm(leads[i][1], leads[j][1]), leads[i][1])))
        if minimal_pairs:
            kept = []
            for j, m in cands:
                if not any(_divides(m2, m) and (m2 != m or j2 < j) for j2, m2 in cands if j2 != j):
                    kept.append((j, m))
            cands = kept
        for j, si in cands:
            L = _lcm(leads[i][1], leads[j][1])
            sj = _esub(L, leads[j][1])
            s: Vec = {}
            _axpy(s, -(1 / lcs[i]), si, cols[i])
            _axpy(s, 1 / lcs[j], sj, cols[j])
            r, quots = reduce_vec(s, cols, leads, order, record=True)
            if r:
                raise ArithmeticError("syzygy input is not a Gröbner basis")
            tau: Vec = {(i, si): 1 / lcs[i]}
            tau[(j, sj)] = -(1 / lcs[j])
            for k, q in enumerate(quots):
                for e, c in q.items():
                    t = (k, e)
                    v = tau.get(t)
                    v = -c if v is None else v - c
                    if v:
                        tau[t] = v
                    else:
                        tau.pop(t, None)
            if tau:
                out.append(tau)
    return out, induced


def syzygies(G: FreeModuleMap, order=None) -> FreeModuleMap:
    """Generators of the kernel of ``G`` whose columns are a Gröbner basis."""
    order = as_module_order(order or GREVLEX)
    cols = [v for v in G.column_vecs()]
    if any(not v for v in cols):
        raise ValueError("zero column in syzygy input")
    syz, _ = _schreyer_syzygies(cols, order)
    return FreeModuleMap.from_columns(syz, G.cols, G.vars, G.field)


def _sort_for_schreyer(cols: List[Vec], order: ModuleOrder) -> List[Vec]:
    # within one component, lex-larger lead monomials first; keeps the
    # Schreyer chain from growing past the number of variables
    def key(v):
        p, e = lead(v, order)
        return (p, tuple(-x for x in e))

    return sorted(cols, key=key)


class FreeResolution:
    """``maps[i]`` is ``d_{i+1}: F_{i+1} -> F_i``; the resolved module is ``P/target``."""

    def __init__(self, maps: List[FreeModuleMap], target: Ideal, minimal: bool = False):
        self.maps = maps
        self.target = target
        self.minimal = minimal
        for a, b in zip(maps, maps[1:]):
            if a.cols != b.rows:
                raise DimensionMismatch("resolution maps are not composable")

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def ranks(self) -> List[int]:
        return [1] + [m.cols for m in self.maps]

    def compositions_vanish(self) -> bool:
        return all((a @ b).is_zero() for a, b in zip(self.maps, self.maps[1:]))

    def evaluated(self, a: Sequence | None = None) -> List[list]:
        return [m.evaluate(a) for m in self.maps]

    def __repr__(self):
        return f"FreeResolution(ranks={self.ranks})"


def _is_unit(f: MultiPoly) -> bool:
    return bool(f) and f.is_constant()


def minimalize(maps: List[FreeModuleMap]) -> List[FreeModuleMap]:
    """Strip unit entries by row and column elimination; returns new maps.

    Each pass pivots on a constant entry ``u = d[i][j]`` of some ``d_k``, clears
    its column by row operations and its row by column operations, then drops
    the resulting trivial summand ``P --u--> P`` from the complex.
    """
    maps = [FreeModuleMap([list(r) for r in m.entries], m.vars, m.field, m.rows, m.cols)
            for m in maps]
    changed = True
    while changed:
        changed = False
        for k, m in enumerate(maps):
            pos = next(((i, j) for i in range(m.rows) for j in range(m.cols)
                        if _is_unit(m.entries[i][j])), None)
            if pos is None:
                continue
            i, j = pos
            d = m.entries
            u = d[i][j].constant_term()
            rowi = d[i]
            for r in range(m.rows):
                if r != i and d[r][j]:
                    f = d[r][j] / u
                    d[r] = [x - f * y if y else x for x, y in zip(d[r], rowi)]
            zero = MultiPoly.zero(m.vars, m.field)
            d[i] = [zero if s != j else d[i][j] for s in range(m.cols)]
            # drop row i, column j of d_k; column i of d_{k-1}; row j of d_{k+1}
            new = [[e for s, e in enumerate(row) if s != j] for r, row in enumerate(d) if r != i]
            maps[k] = FreeModuleMap(new, m.vars, m.field, m.rows - 1, m.cols - 1)
            if k > 0:
                p = maps[k - 1]
                maps[k - 1] = FreeModuleMap([[e for s, e in enumerate(row) if s != i] for row in p.entries],
                                            p.vars, p.field, p.rows, p.cols - 1)
            if k + 1 < len(maps):
                q = maps[k + 1]
                maps[k + 1] = FreeModuleMap([row for r, row in enumerate(q.entries) if r != j],
                                            q.vars, q.field, q.rows - 1, q.cols)
            changed = True
            break
    while maps and maps[-1].cols == 0:
        maps.pop()
    return maps


def free_resolution(I: Ideal, cap: int | None = None, minimal: bool = False) -> FreeResolution:
    """Free resolution of ``P/I`` by iterated Schreyer syzygies.

    ``d_1`` is the row of the reduced grevlex Gröbner basis of ``I``. If more
    than ``cap`` (default ``n + 3``) steps come out the resolution is
    minimalized once; :class:`CapExceeded` is raised if it is still too long.
    """
    n = I.n
    cap = n + 3 if cap is None else cap
    G = I.gb()
    if any(g.is_constant() for g in G):
        raise ValueError("cannot resolve P/I for the unit ideal")
    if not G:
        return FreeResolution([], I, minimal=True)
    order: ModuleOrder = POT(GREVLEX)
    cols = _sort_for_schreyer([{(0, e): c for e, c in g.terms.items()} for g in G], order)
    maps = [FreeModuleMap.from_columns(cols, 1, I.vars, I.field)]
    hard_stop = cap + n + 1  # Schreyer terminates well before this; guards against runaway loops
    while True:
        syz, induced = _schreyer_syzygies(cols, order)
        if not syz:
            break
        if len(maps) >= hard_stop:
            raise CapExceeded(f"syzygy computation did not stop after {hard_stop} steps")
        syz = _sort_for_schreyer(syz, induced)
        maps.append(FreeModuleMap.from_columns(syz, len(cols), I.vars, I.field))
        cols, order = syz, induced
    if len(maps) > cap:
        maps = minimalize(maps)
        if len(maps) > cap:
            raise CapExceeded(f"resolution longer than {cap} steps after minimalization")
        return FreeResolution(maps, I, minimal=True)
    if minimal:
        maps = minimalize(maps)
    return FreeResolution(maps, I, minimal=minimal)
