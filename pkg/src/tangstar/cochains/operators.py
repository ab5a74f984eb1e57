"""Multidifferential operators and operator series with rational coefficients.

A term of an s-ary operator is a coefficient together with one multi-index
per slot; multi-indices are stored exponent-style (one count per variable).
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from math import comb

from ..exact import Polynomial, RationalFunction, VarSpace, parse_expression, simplify
from .base import Cochain, Evaluator, LinearCombination, is_zero


def _mi_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mi_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _sub_multi_indices(alpha):
    return product(*(range(k + 1) for k in alpha))


def _binom_multi(alpha, beta):
    c = 1
    for a, b in zip(alpha, beta):
        c *= comb(a, b)
    return c


def derivative(f, alpha):
    """Mixed partial derivative of a polynomial or rational function."""
    if not any(alpha):
        return f
    return f.diff_multi(alpha)


class MultiDiffOperator(Cochain):
    """Finite sum of ``coef * d^{a_1}(u_1) ... d^{a_s}(u_s)``."""

    def __init__(self, space: VarSpace, arity: int, terms=None, name="D"):
        if arity < 1:
            raise ValueError("arity must be at least 1")
        self.space = space
        self.arity = arity
        self.name = name
        clean: dict = {}
        m = len(space)
        for key, coef in (terms or {}).items():
            key = tuple(tuple(a) for a in key)
            if len(key) != arity or any(len(a) != m for a in key):
                raise ValueError(f"term {key} does not fit arity {arity} over {space!r}")
            coef = _coef(coef, space)
            if is_zero(coef):
                continue
            prev = clean.get(key)
            coef = coef if prev is None else simplify(prev + coef)
            if is_zero(coef):
                del clean[key]
            else:
                clean[key] = coef
        self.terms = clean

    @property
    def vanishes_on_constants(self) -> bool:
        return all(all(any(a) for a in key) for key in self.terms)

    def order(self) -> int:
        return max((sum(map(sum, key)) for key in self.terms), default=0)

    def slot_orders(self) -> tuple:
        return tuple(max((sum(key[l]) for key in self.terms), default=0) for l in range(self.arity))

    def is_zero(self):
        return not self.terms

    def evaluate(self, *args):
        cache: dict = {}
        total = Polynomial.zero(self.space)
        for key, coef in self.terms.items():
            val = coef
            for l, alpha in enumerate(key):
                ck = (l, alpha)
                d = cache.get(ck)
                if d is None:
                    d = derivative(args[l], alpha)
                    cache[ck] = d
                if is_zero(d):
                    val = None
                    break
                val = val * d
            if val is not None:
                total = total + val
        return total

    # -- algebra of operators -----------------------------------------------
    def _combine(self, other, sign):
        if other.space != self.space or other.arity != self.arity:
            raise ValueError("operators differ in arity or varspace")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = simplify(terms[k] + c * sign) if k in terms else c * sign
        return MultiDiffOperator(self.space, self.arity, terms, name=self.name)

    def __add__(self, other):
        if isinstance(other, MultiDiffOperator):
            return self._combine(other, 1)
        return Cochain.__add__(self, other)

    def __sub__(self, other):
        if isinstance(other, MultiDiffOperator):
            return self._combine(other, -1)
        return Cochain.__sub__(self, other)

    def __neg__(self):
        return self.scaled(-1)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scaled(c)
        return NotImplemented

    __rmul__ = __mul__

    def scaled(self, c):
        c = Fraction(c)
        return MultiDiffOperator(self.space, self.arity, {k: v * c for k, v in self.terms.items()}, self.name)

    def times(self, f):
        """Left multiplication of every coefficient by the function ``f``."""
        return MultiDiffOperator(self.space, self.arity,
                                 {k: simplify(v * f) for k, v in self.terms.items()}, self.name)

    def __eq__(self, other):
        if not isinstance(other, MultiDiffOperator):
            return NotImplemented
        if self.space != other.space or self.arity != other.arity or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = Cochain.__hash__

    def compose(self, inner: "MultiDiffOperator") -> "MultiDiffOperator":
        """Composition of unary operators, self after inner."""
        if self.arity != 1 or inner.arity != 1:
            raise ValueError("composition is defined for unary operators")
        terms: dict = {}
        for (alpha,), a in self.terms.items():
            for (beta,), b in inner.terms.items():
                for gamma in _sub_multi_indices(alpha):
                    db = derivative(b, gamma)
                    if is_zero(db):
                        continue
                    key = (_mi_add(_mi_sub(alpha, gamma), beta),)
                    val = a * db * _binom_multi(alpha, gamma)
                    terms[key] = simplify(terms[key] + val) if key in terms else simplify(val)
        return MultiDiffOperator(self.space, 1, terms, name=f"{self.name}o{inner.name}")

    def coefficient(self, *slots):
        """Coefficient of the term whose slots carry the given multi-indices."""
        key = tuple(tuple(a) for a in slots)
        return self.terms.get(key, Polynomial.zero(self.space))

    def to_text(self) -> str:
        lines = []
        for key, coef in sorted(self.terms.items(), key=lambda t: t[0]):
            slots = " | ".join("[" + ",".join(str(i + 1) for i, k in enumerate(a) for _ in range(k)) + "]" for a in key)
            lines.append(f"term {coef} ; {slots}")
        return "\n".join(lines)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, coef in sorted(self.terms.items(), key=lambda t: t[0]):
            d = " ".join(
                "d" + "".join(str(i + 1) for i, k in enumerate(a) for _ in range(k)) if any(a) else "id"
                for a in key
            )
            parts.append(f"({coef})*[{d}]")
        return " + ".join(parts)


def _coef(c, space):
    if isinstance(c, (int, Fraction)):
        return Polynomial.constant(space, c)
    if isinstance(c, RationalFunction):
        return simplify(c)
    return c


def multi_index(space: VarSpace, indices) -> tuple:
    """Exponent-style multi-index from a list of 1-based indices or variable names."""
    e = [0] * len(space)
    for i in indices:
        if isinstance(i, str):
            e[space.index(i)] += 1
        else:
            if not 1 <= i <= len(space):
                raise ValueError(f"derivative index {i} out of range")
            e[i - 1] += 1
    return tuple(e)


def unary(space, terms: dict, name="D") -> MultiDiffOperator:
    """Convenience: ``{(4, 4): coef}`` style unary operator with 1-based index tuples."""
    return MultiDiffOperator(space, 1, {(multi_index(space, k),): c for k, c in terms.items()}, name)


_TERM = re.compile(r"^\s*term\s+(.+?)\s*;\s*(.+?)\s*$")


class OperatorFormatError(ValueError):
    pass


def parse_operator(text: str, space: VarSpace, name="D", require_vanishing=False) -> MultiDiffOperator:
    """Parse the line format ``term <coef> ; [i,j] | [k] | ...`` (``#`` comments allowed)."""
    terms: dict = {}
    arity = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _TERM.match(line)
        if not m:
            raise OperatorFormatError(f"line {lineno}: expected 'term <coef> ; [..] | ...', got {raw!r}")
        coef = parse_expression(m.group(1), space)
        slots = []
        for chunk in m.group(2).split("|"):
            chunk = chunk.strip()
            if not (chunk.startswith("[") and chunk.endswith("]")):
                raise OperatorFormatError(f"line {lineno}: malformed slot {chunk!r}")
            inner = chunk[1:-1].strip()
            idx = []
            for tok in filter(None, (t.strip() for t in inner.split(","))):
                idx.append(int(tok) if tok.isdigit() else tok)
            try:
                slots.append(multi_index(space, idx))
            except (KeyError, ValueError) as exc:
                raise OperatorFormatError(f"line {lineno}: {exc}") from None
        if arity is None:
            arity = len(slots)
        elif arity != len(slots):
            raise OperatorFormatError(f"line {lineno}: arity {len(slots)} differs from {arity}")
        if require_vanishing and not all(any(a) for a in slots):
            raise OperatorFormatError(f"line {lineno}: empty slot in an operator vanishing on constants")
        key = tuple(slots)
        terms[key] = simplify(terms[key] + coef) if key in terms else coef
    if arity is None:
        raise OperatorFormatError("no terms")
    return MultiDiffOperator(space, arity, terms, name=name)


class OperatorSeries(Cochain):
    """Sum over n >= start of finite operators, exact on polynomial inputs.

    ``generator(n)`` returns the n-th term as a :class:`MultiDiffOperator`;
    ``bound(*args)`` returns the largest n that can contribute for these
    arguments.  ``term_eval(top, *args)``, when given, yields ``(n, value)``
    for every n up to ``top`` without building the operators; it must agree
    with the generated terms.
    """

    def __init__(self, space, arity, generator, bound, start=0, name="series", term_eval=None):
        self.space = space
        self.arity = arity
        self.generator = generator
        self.bound = bound
        self.start = start
        self.name = name
        self.term_eval = term_eval
        self._terms: dict = {}

    def term(self, n) -> MultiDiffOperator:
        op = self._terms.get(n)
        if op is None:
            op = self.generator(n)
            self._terms[n] = op
        return op

    def evaluate(self, *args):
        top = self.bound(*args)
        total = Polynomial.zero(self.space)
        if self.term_eval is not None:
            for n, val in self.term_eval(top, *args):
                if not is_zero(val):
                    total = total + val
            return total
        for n in range(self.start, top + 1):
            val = self.term(n).evaluate(*args)
            if not is_zero(val):
                total = total + val
        return total

    def partial_sum(self, top) -> MultiDiffOperator:
        op = MultiDiffOperator(self.space, self.arity, {}, name=f"{self.name}[<={top}]")
        for n in range(self.start, top + 1):
            op = op + self.term(n)
        return op


def apply_operator(D: Cochain, args):
    return D(*args)


def hochschild_coboundary(C: Cochain) -> Cochain:
    """The Hochschild coboundary; closed operator form for :class:`MultiDiffOperator`."""
    if isinstance(C, MultiDiffOperator):
        return _coboundary_operator(C)
    s = C.arity
    space = C.space

    def dC(*u):
        total = u[0] * C.evaluate(*u[1:])
        for k in range(1, s + 1):
            merged = u[:k - 1] + (u[k - 1] * u[k],) + u[k + 1:]
            val = C.evaluate(*merged)
            if not is_zero(val):
                total = total + val if k % 2 == 0 else total - val
        last = C.evaluate(*u[:s])
        if not is_zero(last):
            total = total + last * u[s] if (s + 1) % 2 == 0 else total - last * u[s]
        return total

    return Evaluator(s + 1, space, dC, name=f"d({C.name})")


def _coboundary_operator(D: MultiDiffOperator) -> MultiDiffOperator:
    s = D.arity
    zero = (0,) * len(D.space)
    terms: dict = {}

    def add(key, val):
        if key in terms:
            terms[key] = simplify(terms[key] + val)
        else:
            terms[key] = val

    for key, coef in D.terms.items():
        add((zero,) + key, coef)
        for k in range(1, s + 1):
            alpha = key[k - 1]
            sign = 1 if k % 2 == 0 else -1
            for beta in _sub_multi_indices(alpha):
                new = key[:k - 1] + (tuple(beta), _mi_sub(alpha, beta)) + key[k:]
                add(new, coef * (sign * _binom_multi(alpha, beta)))
        sign = 1 if (s + 1) % 2 == 0 else -1
        add(key + (zero,), coef * sign)
    return MultiDiffOperator(D.space, s + 1, terms, name=f"d({D.name})")


def sum_cochains(*cs) -> Cochain:
    if all(isinstance(c, MultiDiffOperator) for c in cs):
        out = cs[0]
        for c in cs[1:]:
            out = out + c
        return out
    return LinearCombination([(Fraction(1), c) for c in cs])
