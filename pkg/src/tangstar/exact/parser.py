"""Recursive-descent parser for rational expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' natural)?
    base   := integer | variable | '(' expr ')' | '-' factor

``2/3*x1`` and ``(2*x1)/3`` both parse; the result is a :class:`Polynomial`
whenever every division is exact and a :class:`RationalFunction` otherwise.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .polynomial import Polynomial, VarSpace
from .ratfunc import RationalFunction, ZeroDenominatorError, simplify

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message, text="", pos=0):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))


class UnknownVariableError(ParseError):
    pass


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, space):
        self.text = text
        self.space = space
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {expected}, found {tok[1]!r}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDenominatorError(f"division by the zero polynomial at position {pos} in {self.text!r}")
                value = value / rhs
        return value

    def factor(self):
        value = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise ParseError("exponent must be a natural number", self.text, tok[2])
            value = value ** tok[1]
        return value

    def base(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return RationalFunction.lift(Fraction(val), self.space)
        if kind == "name":
            self.take()
            if val not in self.space:
                raise UnknownVariableError(f"unknown variable {val!r}", self.text, pos)
            return RationalFunction.lift(Polynomial.var(self.space, val))
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if kind == "-":
            self.take()
            return -self.factor()
        if kind == "+":
            self.take()
            return self.factor()
        raise ParseError(f"unexpected {'end of input' if kind == 'end' else repr(val)}", self.text, pos)


def parse_expression(text: str, space: VarSpace):
    """Parse ``text`` into an exact polynomial or rational function over ``space``."""
    p = _Parser(text, space)
    value = p.expr()
    p.take("end")
    return simplify(value)


def parse_polynomial(text: str, space: VarSpace) -> Polynomial:
    value = parse_expression(text, space)
    if not isinstance(value, Polynomial):
        raise ParseError(f"{text!r} is not a polynomial", text, 0)
    return value
