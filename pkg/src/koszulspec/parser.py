"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'

Products of parenthesized sums are expanded, so ``y*(1 - x*z)`` is accepted.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import FieldError, ParseError
from .field import QQ, FieldSpec
from .poly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: Sequence[str], field: FieldSpec):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)
        self.index = {v: k for k, v in enumerate(self.vars)}
        self.field = field

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self, value=None):
        kind, val, off = self.tok
        if value is not None and val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", off)
        self.i += 1
        return kind, val, off

    def parse(self) -> MultiPoly:
        if self.tok[0] == "end":
            raise ParseError("empty expression", 0)
        result = self.expr()
        kind, val, off = self.tok
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", off)
        return result

    def expr(self) -> MultiPoly:
        sign = 1
        if self.tok[1] in ("+", "-") and self.tok[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.tok[0] == "op" and self.tok[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.tok[0] == "op" and self.tok[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.tok[0] == "op" and self.tok[1] == "^":
            self.take()
            kind, val, off = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", off)
            base = base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val, off = self.take()
        if kind == "int":
            c = Fraction(int(val))
            if self.tok[0] == "op" and self.tok[1] == "/":
                self.take()
                k2, v2, off2 = self.take()
                if k2 != "int":
                    raise ParseError("denominator must be an integer literal", off2)
                if int(v2) == 0:
                    raise ParseError("zero denominator", off2)
                c = c / int(v2)
            try:
                return MultiPoly.constant(c, self.vars, self.field)
            except FieldError as exc:
                raise ParseError(f"coefficient not in field: {exc}", off) from None
        if kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}", off)
            return MultiPoly.variable(self.index[val], self.vars, self.field)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", off)


def parse_poly(text: str, vars: Sequence[str], field: FieldSpec = QQ) -> MultiPoly:
    """Parse ``text`` into a :class:`MultiPoly` over ``field``.

    Raises :class:`ParseError` (with a byte offset) on syntax errors, unknown
    variables and coefficients that do not exist in ``field``.
    """
    if isinstance(text, bytes):
        text = text.decode()
    return _Parser(text, vars, field).parse()
