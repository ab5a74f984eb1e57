"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent tuples to :class:`fractions.Fraction`
coefficients over an ordered :class:`VarSpace`.  Zero coefficients are never
stored, so the zero polynomial is the empty map.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping

NEG_INF = float("-inf")


class VarSpace:
    """An ordered list of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    @classmethod
    def numbered(cls, prefix: str, m: int) -> "VarSpace":
        return cls(f"{prefix}{i}" for i in range(1, m + 1))

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __eq__(self, other):
        return isinstance(other, VarSpace) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarSpace({list(self.names)})"

    def monomials(self, degree: int) -> Iterator[tuple[int, ...]]:
        """Exponent tuples of exact total ``degree``, in a fixed order."""
        m = len(self.names)
        for combo in combinations_with_replacement(range(m), degree):
            exps = [0] * m
            for i in combo:
                exps[i] += 1
            yield tuple(exps)

    def monomials_upto(self, degree: int) -> Iterator[tuple[int, ...]]:
        for d in range(degree + 1):
            yield from self.monomials(d)


def _coerce_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


def _grlex_key(exps):
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial over a :class:`VarSpace`."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Mapping[tuple, object] | None = None):
        self.space = space
        clean = {}
        if terms:
            n = len(space)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {space!r}")
                c = _coerce_scalar(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, space, terms):
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.space = space
        p.terms = terms
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, space):
        return cls._raw(space, {})

    @classmethod
    def constant(cls, space, c):
        c = _coerce_scalar(c)
        return cls._raw(space, {(0,) * len(space): c} if c else {})

    @classmethod
    def one(cls, space):
        return cls.constant(space, 1)

    @classmethod
    def var(cls, space, name_or_index, power=1):
        i = name_or_index if isinstance(name_or_index, int) else space.index(name_or_index)
        e = [0] * len(space)
        e[i] = power
        return cls._raw(space, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, space, exps, coef=1):
        coef = _coerce_scalar(coef)
        return cls._raw(space, {tuple(exps): coef} if coef else {})

    # -- basic queries ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.space), Fraction(0))

    def is_monomial(self):
        return len(self.terms) == 1

    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def min_degree(self):
        if not self.terms:
            return NEG_INF
        return min(sum(e) for e in self.terms)

    def degree_in(self, indices) -> float | int:
        """Total degree in the variables at ``indices``."""
        if not self.terms:
            return NEG_INF
        idx = list(indices)
        return max(sum(e[i] for i in idx) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Polynomial._raw(self.space, t) for d, t in sorted(parts.items())}

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, k in enumerate(e) if k)
        return out

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    # -- arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.space != self.space:
                raise ValueError(f"varspace mismatch: {self.space!r} vs {other.space!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.space, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        t = dict(self.terms)
        for e, c in o.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s += c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return Polynomial._raw(self.space, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.space, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.space)
            return Polynomial._raw(self.space, {e: c * other for e, c in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial._raw(self.space, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be natural numbers")
        result = Polynomial.one(self.space)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        return self * _coerce_scalar(c)

    def mul_monomial(self, exps, coef=1):
        coef = _coerce_scalar(coef)
        if not coef:
            return Polynomial.zero(self.space)
        return Polynomial._raw(
            self.space,
            {tuple(a + b for a, b in zip(e, exps)): c * coef for e, c in self.terms.items()},
        )

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.space == other.space and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.constant(self.space, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    # -- calculus -----------------------------------------------------------
    def diff(self, i: int, k: int = 1) -> "Polynomial":
        """k-th partial derivative with respect to variable index ``i``."""
        if k == 0:
            return self
        t = {}
        for e, c in self.terms.items():
            a = e[i]
            if a < k:
                continue
            f = 1
            for j in range(a - k + 1, a + 1):
                f *= j
            ne = e[:i] + (a - k,) + e[i + 1:]
            t[ne] = c * f
        return Polynomial._raw(self.space, t)

    def diff_multi(self, alpha) -> "Polynomial":
        """Mixed partial derivative for an exponent-style multi-index."""
        t = {}
        for e, c in self.terms.items():
            f = 1
            ne = []
            for a, k in zip(e, alpha):
                if a < k:
                    break
                for j in range(a - k + 1, a + 1):
                    f *= j
                ne.append(a - k)
            else:
                t[tuple(ne)] = c * f
        return Polynomial._raw(self.space, t)

    # -- substitution -------------------------------------------------------
    def evaluate(self, point: Mapping[int, Fraction]):
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v *= point[i] ** k
            total += v
        return total

    def restrict(self, space: VarSpace) -> "Polynomial":
        """Re-express over ``space``; variables absent there must not occur."""
        idx = []
        for name in space.names:
            idx.append(self.space.index(name) if name in self.space else None)
        used = self.variables()
        for i in used:
            if self.space.names[i] not in space:
                raise ValueError(f"variable {self.space.names[i]} not in {space!r}")
        t = {}
        for e, c in self.terms.items():
            t[tuple(e[j] if j is not None else 0 for j in idx)] = c
        return Polynomial._raw(space, t)

    # -- printing -----------------------------------------------------------
    def monomial_str(self, e) -> str:
        parts = []
        for name, k in zip(self.space.names, e):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            mono = self.monomial_str(e)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if idx == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def monomial_to_word(exps) -> tuple[int, ...]:
    """Nondecreasing index word (0-based) for an exponent tuple."""
    word = []
    for i, k in enumerate(exps):
        word.extend([i] * k)
    return tuple(word)


def word_to_monomial(word, m: int) -> tuple[int, ...]:
    e = [0] * m
    for i in word:
        e[i] += 1
    return tuple(e)
