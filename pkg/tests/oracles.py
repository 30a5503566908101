"""Independent brute-force oracles used to validate the engine."""
from __future__ import annotations

from itertools import product

from koszulspec import MultiPoly
from koszulspec import linalg as la
from koszulspec.poly import monomials_below


def all_reductions(f: MultiPoly, G, order_key) -> set:
    """Every fully reduced remainder reachable by any sequence of single reduction steps."""
    seen, finals = set(), set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        moves = []
        for e, c in g.terms.items():
            for b in G:
                lb = max(b.terms, key=order_key)
                if all(x >= y for x, y in zip(e, lb)):
                    shift = tuple(x - y for x, y in zip(e, lb))
                    moves.append(g - b.mul_monomial(shift, c / b.terms[lb]))
        if moves:
            stack.extend(moves)
        else:
            finals.add(g)
    return finals


def is_reduced_against(f: MultiPoly, G, order_key) -> bool:
    leads = [max(b.terms, key=order_key) for b in G]
    return not any(all(x >= y for x, y in zip(e, lb)) for e in f.terms for lb in leads)


def truncated_quotient_dim(gens, n: int, D: int, field) -> int:
    """``dim V_{<D} / span{m g : deg(m g) < D}`` where ``V_{<D}`` is polynomials of degree ``< D``."""
    basis = monomials_below(n, D)
    pos = {e: i for i, e in enumerate(basis)}
    rows = []
    for g in gens:
        for m in basis:
            h = g.mul_monomial(m)
            if h.is_zero() or h.total_degree() >= D:
                continue
            row = [field.zero] * len(basis)
            for e, c in h.terms.items():
                row[pos[e]] = c
            rows.append(row)
    return len(basis) - (la.rank(rows) if rows else 0)


def koszul_dims_brute(mats, a, field) -> list:
    """Koszul homology dimensions with explicitly assembled differentials (independent sign convention)."""
    from itertools import combinations
    n, dim = len(mats), len(mats[0]) if mats else 0
    ys = [[[m[i][j] - (a[k] if i == j else 0) for j in range(dim)] for i in range(dim)]
          for k, m in enumerate(mats)]
    subsets = [list(combinations(range(n), p)) for p in range(n + 1)]
    diffs = []
    for p in range(1, n + 1):
        src, dst = subsets[p], subsets[p - 1]
        idx = {s: i for i, s in enumerate(dst)}
        M = [[field.zero] * (len(src) * dim) for _ in range(len(dst) * dim)]
        for j, S in enumerate(src):
            for s, i in enumerate(S):
                T = S[:s] + S[s + 1:]
                sign = 1 if s % 2 == 0 else -1
                r = idx[T]
                for u in range(dim):
                    for v in range(dim):
                        M[r * dim + u][j * dim + v] += sign * ys[i][u][v]
        diffs.append(M)
    dims = [len(s) * dim for s in subsets]
    ranks = [la.rank(M) if M and M[0] else 0 for M in diffs]
    out = []
    for p in range(n + 1):
        r_in = ranks[p] if p < n else 0      # image of d_{p+1}
        r_out = ranks[p - 1] if p >= 1 else 0
        out.append(dims[p] - r_out - r_in)
    return out


def grid_points(field, n, values):
    return [tuple(field(v) for v in pt) for pt in product(values, repeat=n)]
