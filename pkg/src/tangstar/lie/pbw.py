"""Enveloping algebra in Poincaré-Birkhoff-Witt normal form.

Elements are sparse maps from nondecreasing index words (0-based) to
rationals.  All products go through one memoized primitive, left
multiplication of a normal-form word by a generator:

    X_i * (X_j w) = X_j (X_i w) + sum_k c_ij^k X_k w      (i > j)

which terminates because the basis is Jordan-Hölder.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..exact import Polynomial
from ..exact.polynomial import monomial_to_word, word_to_monomial


class PBWElement:
    """Element of U(g); ``terms`` maps nondecreasing words to coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c}
        for w in self.terms:
            if any(a > b for a, b in zip(w, w[1:])):
                raise ValueError(f"word {w} is not in normal form; use pbw_reduce")

    @classmethod
    def _raw(cls, algebra, terms):
        e = cls.__new__(cls)
        e.algebra = algebra
        e.terms = terms
        return e

    @classmethod
    def unit(cls, algebra):
        return cls._raw(algebra, {(): Fraction(1)})

    @classmethod
    def generator(cls, algebra, i):
        """X_i for a 1-based index i."""
        return cls._raw(algebra, {(i - 1,): Fraction(1)})

    def __eq__(self, other):
        return isinstance(other, PBWElement) and self.terms == other.terms

    def __add__(self, other):
        return PBWElement._raw(self.algebra, _axpy(dict(self.terms), other.terms, 1))

    def __sub__(self, other):
        return PBWElement._raw(self.algebra, _axpy(dict(self.terms), other.terms, -1))

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return self.algebra.enveloping.mul(self, other)
        if isinstance(other, (int, Fraction)):
            return PBWElement._raw(self.algebra, {w: c * other for w, c in self.terms.items()} if other else {})
        return NotImplemented

    __rmul__ = lambda self, c: self.__mul__(c) if not isinstance(c, PBWElement) else NotImplemented

    def degree(self):
        return max((len(w) for w in self.terms), default=float("-inf"))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0])):
            word = "*".join(f"X{i + 1}" for i in w) or "1"
            parts.append(f"{c}*{word}" if c != 1 else word)
        return " + ".join(parts)

    def __repr__(self):
        return f"PBWElement({self})"


def _axpy(acc: dict, terms: dict, scale):
    """acc += scale * terms, dropping zeros; returns acc."""
    for w, c in terms.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)
    return acc


class EnvelopingAlgebra:
    """Normal-form arithmetic in U(g) with per-algebra memo tables."""

    def __init__(self, lie):
        self.lie = lie
        self.m = lie.dim
        self._left_memo: dict = {}
        self._sym_memo: dict = {(0,) * self.m: {(): Fraction(1)}}
        self._gutt_memo: dict = {}

    # -- primitive ----------------------------------------------------------
    def left_word(self, i: int, word: tuple) -> dict:
        """Normal form of X_i * word for a normal-form word."""
        key = (i, word)
        hit = self._left_memo.get(key)
        if hit is not None:
            return hit
        if not word or i <= word[0]:
            res = {(i,) + word: Fraction(1)}
        else:
            j, rest = word[0], word[1:]
            res = {}
            for w, c in self.left_word(i, rest).items():
                _axpy(res, self.left_word(j, w), c)
            for k, ck in self.lie.brackets.get((i, j), {}).items():
                # [X_i, X_j] lies below X_j <= rest[0], so X_k rest is normal
                _axpy(res, self.left_word(k, rest), ck)
        self._left_memo[key] = res
        return res

    def left(self, i: int, terms: dict) -> dict:
        out: dict = {}
        for w, c in terms.items():
            _axpy(out, self.left_word(i, w), c)
        return out

    # -- public operations --------------------------------------------------
    def reduce(self, words) -> PBWElement:
        """Normal form of a formal combination ``{word: coef}`` of arbitrary 1-based words."""
        out: dict = {}
        for word, c in dict(words).items():
            word = tuple(i - 1 for i in word)
            for i in word:
                if not 0 <= i < self.m:
                    raise ValueError(f"index {i + 1} out of range 1..{self.m}")
            cur = {(): Fraction(1)}
            for i in reversed(word):
                cur = self.left(i, cur)
            _axpy(out, cur, Fraction(c))
        return PBWElement._raw(self.lie, out)

    def mul(self, a: PBWElement, b: PBWElement) -> PBWElement:
        return PBWElement._raw(self.lie, self._mul_terms(a.terms, b.terms))

    def _mul_terms(self, a: dict, b: dict) -> dict:
        # group a's words by their last letter so shared suffixes are applied once
        out: dict = {}
        groups: dict = {}
        for w, c in a.items():
            if not w:
                _axpy(out, b, c)
            else:
                groups.setdefault(w[-1], {})[w[:-1]] = c
        for i, sub in groups.items():
            _axpy(out, self._mul_terms(sub, self.left(i, b)), 1)
        return out

    def _sym_word_sum(self, exps: tuple) -> dict:
        """Sum of all distinct arrangements of the multiset ``exps``, reduced."""
        hit = self._sym_memo.get(exps)
        if hit is not None:
            return hit
        out: dict = {}
        for i, k in enumerate(exps):
            if k:
                sub = exps[:i] + (k - 1,) + exps[i + 1:]
                _axpy(out, self.left(i, self._sym_word_sum(sub)), 1)
        self._sym_memo[exps] = out
        return out

    def _sym_weight(self, exps) -> Fraction:
        num = 1
        for k in exps:
            num *= factorial(k)
        return Fraction(num, factorial(sum(exps)))

    def symmetrize_terms(self, poly_terms: dict) -> dict:
        out: dict = {}
        for e, c in poly_terms.items():
            _axpy(out, self._sym_word_sum(e), c * self._sym_weight(e))
        return out

    def symmetrize(self, P: Polynomial) -> PBWElement:
        """The symmetrization map S(g) -> U(g)."""
        if P.space != self.lie.space:
            raise ValueError("polynomial not over the algebra's coordinates")
        return PBWElement._raw(self.lie, self.symmetrize_terms(P.terms))

    def decompose_terms(self, terms: dict, lowest=None) -> dict[int, dict]:
        """Graded components of a normal-form combination, as exponent dicts.

        Peels the top-length symbol, subtracts its symmetrization and
        repeats.  Components below ``lowest`` are not computed.
        """
        u = dict(terms)
        comps: dict[int, dict] = {}
        while u:
            k = max(len(w) for w in u)
            if lowest is not None and k < lowest:
                break
            top = {word_to_monomial(w, self.m): c for w, c in u.items() if len(w) == k}
            comps[k] = top
            _axpy(u, self.symmetrize_terms(top), -1)
        return comps

    def graded_decompose(self, u: PBWElement) -> dict[int, Polynomial]:
        comps = self.decompose_terms(u.terms)
        return {k: Polynomial(self.lie.space, t) for k, t in sorted(comps.items())}

    # -- Gutt star product on monomials -------------------------------------
    def sym_product(self, e1: tuple, e2: tuple) -> dict:
        """sigma(x^e1) * sigma(x^e2) in normal form."""
        right = self.symmetrize_terms({e2: Fraction(1)})
        # sigma(x^e1) * b = weight * R(e1) with R(beta) = sum_i X_i R(beta - e_i)
        memo = {(0,) * self.m: right}

        def R(beta):
            hit = memo.get(beta)
            if hit is not None:
                return hit
            out: dict = {}
            for i, k in enumerate(beta):
                if k:
                    sub = beta[:i] + (k - 1,) + beta[i + 1:]
                    _axpy(out, self.left(i, R(sub)), 1)
            memo[beta] = out
            return out

        w = self._sym_weight(e1)
        return {word: c * w for word, c in R(tuple(e1)).items()}

    def gutt_monomials(self, e1: tuple, e2: tuple) -> dict[int, dict]:
        """All Gutt cochains on a monomial pair: n -> exponent dict of C_n."""
        key = (e1, e2)
        hit = self._gutt_memo.get(key)
        if hit is not None:
            return hit
        r, s = sum(e1), sum(e2)
        comps = self.decompose_terms(self.sym_product(e1, e2))
        out = {}
        for k, t in comps.items():
            n = r + s - k
            scale = 2 ** n
            out[n] = {e: c * scale for e, c in t.items()}
        self._gutt_memo[key] = out
        return out


def pbw_reduce(L, words) -> PBWElement:
    return L.enveloping.reduce(words)


def uea_mul(a: PBWElement, b: PBWElement) -> PBWElement:
    if a.algebra is not b.algebra:
        raise ValueError("elements of different enveloping algebras")
    return a.algebra.enveloping.mul(a, b)


def symmetrize(L, P: Polynomial) -> PBWElement:
    return L.enveloping.symmetrize(P)


def graded_decompose(u: PBWElement) -> dict[int, Polynomial]:
    return u.algebra.enveloping.graded_decompose(u)
