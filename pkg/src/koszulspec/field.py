"""Exact base fields: the rationals and prime fields F_p.

Rational elements are plain :class:`fractions.Fraction` objects; elements of
F_p are :class:`Mod` instances. Both support the usual arithmetic operators,
so everything downstream is written once against ``+ - * /``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FieldError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Mod:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise FieldError(f"{other} is not defined in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return Mod(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return Mod(pow(self.v, e, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (Mod, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.v == o

    def __lt__(self, other):
        return self.v < self._coerce(other)

    def __le__(self, other):
        return self.v <= self._coerce(other)

    def __gt__(self, other):
        return self.v > self._coerce(other)

    def __ge__(self, other):
        return self.v >= self._coerce(other)

    def __hash__(self):
        return hash(self.v)

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


Scalar = Union[Fraction, Mod]


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p == 0``) or the prime field GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accept ``QQ``, ``Q``, ``GF(5)``, ``F5`` or a bare prime ``5``."""
        t = text.strip().upper().replace(" ", "")
        if t in ("QQ", "Q", "RATIONALS"):
            return cls(0)
        for prefix in ("GF(", "F_", "GF", "F"):
            if t.startswith(prefix):
                t = t[len(prefix):].rstrip(")")
                break
        try:
            return cls(int(t))
        except ValueError:
            raise FieldError(f"unknown field {text!r}") from None

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __str__(self):
        return self.name

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value) -> Scalar:
        if self.p == 0:
            if isinstance(value, Mod):
                raise FieldError("cannot coerce a GF(p) element into QQ")
            if isinstance(value, str):
                return self.parse_scalar(value)
            return Fraction(value)
        if isinstance(value, Mod):
            if value.p != self.p:
                raise FieldError(f"GF({value.p}) element in GF({self.p})")
            return value
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, int):
            return Mod(value, self.p)
        value = Fraction(value)
        if value.denominator % self.p == 0:
            raise FieldError(f"{value} is not defined in GF({self.p})")
        return Mod(value.numerator * pow(value.denominator, -1, self.p), self.p)

    def parse_scalar(self, text: str) -> Scalar:
        """Parse ``"p/q"`` or an integer literal into the field."""
        try:
            q = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise FieldError(f"not a rational number: {text!r}") from None
        return self(q)

    def elements(self):
        """All elements of a prime field, in residue order."""
        if self.p == 0:
            raise FieldError("QQ is infinite")
        return [Mod(v, self.p) for v in range(self.p)]

    def format(self, c: Scalar) -> str:
        """Canonical text form: ``"p/q"`` or an integer."""
        if isinstance(c, Mod):
            return str(c.v)
        c = Fraction(c)
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def sort_key(self, c: Scalar):
        return c.v if isinstance(c, Mod) else Fraction(c)


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
