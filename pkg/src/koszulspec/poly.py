"""Sparse multivariate polynomials over an exact field."""
from __future__ import annotations

from itertools import product
from math import comb
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import DimensionMismatch, FieldError
from .field import QQ, FieldSpec, Scalar

Exponent = Tuple[int, ...]


def grevlex_key(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


class MultiPoly:
    """An immutable polynomial in ``vars`` with coefficients in ``field``.

    ``terms`` maps dense exponent tuples to nonzero coefficients. Two equal
    polynomials always have identical term maps.
    """

    __slots__ = ("vars", "field", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, object] | None = None,
                 field: FieldSpec = QQ):
        self.vars = tuple(vars)
        self.field = field
        n = len(self.vars)
        clean: Dict[Exponent, Scalar] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise DimensionMismatch(f"exponent {e} has wrong length for {self.vars}")
            c = field(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms, field) -> "MultiPoly":
        # terms must already be clean field elements with no zeros
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, vars, field: FieldSpec = QQ) -> "MultiPoly":
        return cls._raw(tuple(vars), {}, field)

    @classmethod
    def constant(cls, c, vars, field: FieldSpec = QQ) -> "MultiPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, field)

    @classmethod
    def monomial(cls, e: Exponent, vars, field: FieldSpec = QQ, c=1) -> "MultiPoly":
        return cls(vars, {tuple(e): c}, field)

    @classmethod
    def variable(cls, i: int, vars, field: FieldSpec = QQ) -> "MultiPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): 1}, field)

    @classmethod
    def gens(cls, vars, field: FieldSpec = QQ):
        return [cls.variable(i, vars, field) for i in range(len(vars))]

    # -- basic queries --------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        z = (0,) * self.nvars
        return all(e == z for e in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        """Order at the origin; -1 for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=-1)

    def coefficient(self, e: Exponent) -> Scalar:
        return self.terms.get(tuple(e), self.field.zero)

    def sorted_terms(self, key=grevlex_key):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.vars != other.vars or self.field != other.field:
            raise DimensionMismatch("polynomials live in different rings")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(other, self.vars, self.field)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return MultiPoly._raw(self.vars, t, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.field(other)
            if not c:
                return MultiPoly.zero(self.vars, self.field)
            return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()}, self.field)
        self._check(other)
        t: Dict[Exponent, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e)
                t[e] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly._raw(self.vars, {e: c for e, c in t.items() if c}, self.field)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = self.field(c)
        return self * (self.field.one / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.vars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, e: Exponent, c=1) -> "MultiPoly":
        c = self.field(c)
        return MultiPoly._raw(
            self.vars,
            {tuple(a + b for a, b in zip(k, e)): v * c for k, v in self.terms.items()} if c else {},
            self.field,
        )

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.field == other.field and self.terms == other.terms
        try:
            return self == self._lift(other)
        except (TypeError, ValueError, FieldError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.field, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------------
    def eval(self, a: Sequence) -> Scalar:
        """Value at the point ``a``."""
        if len(a) != self.nvars:
            raise DimensionMismatch(f"point of length {len(a)} for {self.nvars} variables")
        a = [self.field(x) for x in a]
        total = self.field.zero
        for e, c in self.terms.items():
            v = c
            for ai, k in zip(a, e):
                if k:
                    v = v * ai ** k
            total = total + v
        return total

    __call__ = eval

    def partial(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(i)
        t: Dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                v = c * e[i]
                if v:
                    t[tuple(d)] = v
        return MultiPoly._raw(self.vars, t, self.field)

    def translate(self, a: Sequence) -> "MultiPoly":
        """The polynomial ``g`` with ``g(X) = f(X + a)``."""
        if len(a) != self.nvars:
            raise DimensionMismatch(f"shift of length {len(a)} for {self.nvars} variables")
        a = [self.field(x) for x in a]
        if all(not x for x in a):
            return self
        t: Dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            # (X_i + a_i)^{e_i} = sum_k C(e_i, k) a_i^{e_i-k} X_i^k
            factors = []
            for ai, k in zip(a, e):
                if ai:
                    factors.append([(j, comb(k, j) * ai ** (k - j)) for j in range(k + 1)])
                else:
                    factors.append([(k, self.field.one)])
            for choice in product(*factors):
                v = c
                for _, w in choice:
                    v = v * w
                if v:
                    ex = tuple(j for j, _ in choice)
                    s = t.get(ex)
                    t[ex] = v if s is None else s + v
        return MultiPoly._raw(self.vars, {e: c for e, c in t.items() if c}, self.field)

    def substitute(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose with a polynomial map: replace variable i by ``values[i]``."""
        if len(values) != self.nvars:
            raise DimensionMismatch("wrong number of substitutions")
        target = values[0] if values else None
        result = MultiPoly.zero(target.vars, target.field) if target is not None else self
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, target.vars, target.field)
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
            result = result + term
        return result

    def embed(self, vars: Sequence[str], offset: int = 0) -> "MultiPoly":
        """View ``self`` in a larger ring whose variables include ours starting at ``offset``."""
        vars = tuple(vars)
        if vars[offset:offset + self.nvars] != self.vars:
            raise DimensionMismatch("variables do not line up")
        pre, post = (0,) * offset, (0,) * (len(vars) - offset - self.nvars)
        return MultiPoly._raw(vars, {pre + e + post: c for e, c in self.terms.items()}, self.field)

    def restrict(self, vars: Sequence[str], offset: int = 0) -> "MultiPoly":
        """Inverse of :meth:`embed`; the dropped variables must not occur."""
        vars = tuple(vars)
        n = len(vars)
        t = {}
        for e, c in self.terms.items():
            if any(e[:offset]) or any(e[offset + n:]):
                raise DimensionMismatch("polynomial involves a dropped variable")
            t[e[offset:offset + n]] = c
        return MultiPoly._raw(vars, t, self.field)

    # -- printing -------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            neg = self.field.is_rational and c < 0
            mag = -c if neg else c
            cs = self.field.format(mag)
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, vars={self.vars}, field={self.field})"


def poly_eval(f: MultiPoly, a: Sequence) -> Scalar:
    return f.eval(a)


def poly_partial(f: MultiPoly, i: int) -> MultiPoly:
    return f.partial(i)


def poly_translate(f: MultiPoly, a: Sequence) -> MultiPoly:
    return f.translate(a)


def point(coords: Iterable, field: FieldSpec = QQ) -> tuple:
    """An affine point as a tuple of field elements."""
    return tuple(field(c) for c in coords)


def monomials_of_degree(n: int, d: int):
    """Exponent vectors of total degree ``d`` in ``n`` variables, lex-descending."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def monomials_below(n: int, r: int):
    """All exponents of total degree < r, graded by degree (the basis of P/t^r)."""
    out = []
    for d in range(r):
        out.extend(monomials_of_degree(n, d))
    return out
