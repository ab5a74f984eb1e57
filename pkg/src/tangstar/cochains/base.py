"""Multilinear cochains on polynomial algebras.

Every cochain is callable on ``arity`` arguments (polynomials or rational
functions over one varspace).  Subclasses differ in how they are
represented: closed operator form, a convergent-on-polynomials series of
operators, or an opaque exact evaluator.
"""
from __future__ import annotations

from fractions import Fraction

from ..exact import Polynomial, RationalFunction, VarSpace, simplify


def is_zero(x) -> bool:
    if isinstance(x, (Polynomial, RationalFunction)):
        return x.is_zero()
    return not x


def zero_of(space: VarSpace) -> Polynomial:
    return Polynomial.zero(space)


class Cochain:
    arity: int
    space: VarSpace
    name: str = "cochain"

    def __call__(self, *args):
        if len(args) != self.arity:
            raise ValueError(f"{self.name} takes {self.arity} arguments, got {len(args)}")
        for a in args:
            sp = getattr(a, "space", None)
            if sp is not None and sp != self.space:
                raise ValueError(f"argument over {sp!r}, expected {self.space!r}")
        return simplify(self.evaluate(*args))

    def evaluate(self, *args):
        raise NotImplementedError

    def __add__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return LinearCombination([(Fraction(1), self), (Fraction(1), other)])

    def __sub__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return LinearCombination([(Fraction(1), self), (Fraction(-1), other)])

    def __neg__(self):
        return LinearCombination([(Fraction(-1), self)])

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return LinearCombination([(Fraction(c), self)])

    __rmul__ = __mul__

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} arity={self.arity}>"


class Evaluator(Cochain):
    """A cochain known only through an exact evaluation function."""

    def __init__(self, arity: int, space: VarSpace, fn, name="evaluator"):
        self.arity = arity
        self.space = space
        self.fn = fn
        self.name = name

    def evaluate(self, *args):
        return self.fn(*args)


class LinearCombination(Cochain):
    def __init__(self, parts):
        parts = list(parts)
        flat = []
        for c, op in parts:
            if isinstance(op, LinearCombination):
                flat.extend((c * c2, op2) for c2, op2 in op.parts)
            else:
                flat.append((c, op))
        arities = {op.arity for _, op in flat}
        spaces = {op.space for _, op in flat}
        if len(arities) != 1 or len(spaces) != 1:
            raise ValueError("cannot combine cochains of different arity or varspace")
        self.parts = flat
        self.arity = arities.pop()
        self.space = spaces.pop()
        self.name = " + ".join(f"{c}*{op.name}" for c, op in flat)

    def evaluate(self, *args):
        total = Polynomial.zero(self.space)
        for c, op in self.parts:
            v = op.evaluate(*args)
            if not is_zero(v):
                total = total + v * c
        return total


class Multiplication(Cochain):
    """The commutative product, entry 0 of every star-product ladder."""

    arity = 2
    name = "mult"

    def __init__(self, space):
        self.space = space

    def evaluate(self, u, v):
        return u * v


class Identity(Cochain):
    arity = 1
    name = "id"

    def __init__(self, space):
        self.space = space

    def evaluate(self, u):
        return u


def compose_unary(outer: Cochain, inner: Cochain) -> Cochain:
    if outer.arity != 1 or inner.arity != 1:
        raise ValueError("composition is defined for unary cochains")
    return Evaluator(1, outer.space, lambda u: outer.evaluate(inner.evaluate(u)),
                     name=f"({outer.name})o({inner.name})")
