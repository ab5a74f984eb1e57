"""Star products as ladders of bilinear cochains.

The Gutt product is transported from the enveloping algebra: for monomials
P, Q of degrees r, s

    C_n(P, Q) = 2^n * component_{r+s-n}( sigma(P) sigma(Q) )

and extended bilinearly.  A :class:`CochainLadder` holds C_0, C_1, ...; the
truncated product, the associator defect and gauge conjugation act on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..cochains.base import Cochain, Evaluator, Identity, Multiplication, is_zero
from ..exact import Polynomial
from .algebra import LieAlgebra, poisson_bracket


class MissingCochainError(KeyError):
    pass


def gutt_cochain(L: LieAlgebra, n: int, P: Polynomial, Q: Polynomial) -> Polynomial:
    """The n-th Gutt cochain, including its 2^n normalization."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    U = L.enveloping
    acc: dict = {}
    for e1, c1 in P.terms.items():
        for e2, c2 in Q.terms.items():
            part = U.gutt_monomials(e1, e2).get(n)
            if not part:
                continue
            c = c1 * c2
            for e, v in part.items():
                s = acc.get(e, 0) + c * v
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
    return Polynomial._raw(L.space, acc)


class GuttCochain(Cochain):
    arity = 2

    def __init__(self, L: LieAlgebra, n: int):
        self.lie = L
        self.space = L.space
        self.n = n
        self.name = f"C{n}G"

    def evaluate(self, u, v):
        if isinstance(u, Polynomial) and isinstance(v, Polynomial):
            return gutt_cochain(self.lie, self.n, u, v)
        raise TypeError("the Gutt cochain is evaluated on polynomials")


class PoissonCochain(Cochain):
    arity = 2
    name = "poisson"

    def __init__(self, L: LieAlgebra):
        self.lie = L
        self.space = L.space

    def evaluate(self, u, v):
        return poisson_bracket(self.lie, u, v)


@dataclass
class CochainLadder:
    """A family n -> bilinear cochain C_n with C_0 = product and C_1 = bracket."""

    entries: dict
    name: str = "ladder"
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if 0 not in self.entries:
            raise ValueError("a ladder needs its order-0 entry (multiplication)")

    @property
    def space(self):
        return self.entries[0].space

    def order(self):
        """Largest n such that C_0..C_n are all present."""
        n = 0
        while n + 1 in self.entries:
            n += 1
        return n

    def cochain(self, n) -> Cochain:
        try:
            return self.entries[n]
        except KeyError:
            raise MissingCochainError(f"ladder {self.name!r} has no cochain of order {n}") from None

    def get(self, n):
        return self.entries.get(n)

    def truncated(self, N) -> "CochainLadder":
        return CochainLadder({k: v for k, v in self.entries.items() if k <= N}, self.name, dict(self.flags))

    def with_entry(self, n, cochain, name=None) -> "CochainLadder":
        entries = dict(self.entries)
        entries[n] = cochain
        return CochainLadder(entries, name or self.name, dict(self.flags))


def gutt_ladder(L: LieAlgebra, N: int) -> CochainLadder:
    entries = {0: Multiplication(L.space), 1: PoissonCochain(L)}
    for n in range(2, N + 1):
        entries[n] = GuttCochain(L, n)
    return CochainLadder(entries, name=f"gutt({L.name})")


@dataclass
class FormalSeries:
    """Truncated power series in the deformation parameter, coefficients 0..N."""

    coefficients: list

    @property
    def order(self):
        return len(self.coefficients) - 1

    def __getitem__(self, n):
        return self.coefficients[n]

    def __str__(self):
        parts = []
        for n, c in enumerate(self.coefficients):
            text = str(c)
            if n == 0:
                parts.append(text)
                continue
            if " " in text.strip() or text.startswith("-") and n:
                text = f"({text})"
            power = "v" if n == 1 else f"v^{n}"
            parts.append(f"{text}*{power}")
        return " + ".join(parts)


def star_truncated(ladder: CochainLadder, u, v, N: int) -> FormalSeries:
    """u * v through order N; every C_n with n <= N must be present."""
    return FormalSeries([ladder.cochain(n).evaluate(u, v) for n in range(N + 1)])


def associator_defect(ladder: CochainLadder, k: int, u, v, w):
    """Order-k coefficient of (u*v)*w - u*(v*w).

    Missing entries of order k count as zero, so for a ladder that stops at
    k-1 the result is the Hochschild cocycle E_k, and in general it equals
    E_k - delta(C_k).
    """
    space = ladder.space
    total = Polynomial.zero(space)
    for s in range(k + 1):
        r = k - s
        Cs, Cr = ladder.get(s), ladder.get(r)
        if Cs is None or Cr is None:
            if s == k or r == k:
                continue
            raise MissingCochainError(f"ladder {ladder.name!r} lacks order {s if Cs is None else r}")
        left = Cs.evaluate(u, v)
        if not is_zero(left):
            total = total + Cr.evaluate(left, w)
        right = Cs.evaluate(v, w)
        if not is_zero(right):
            total = total - Cr.evaluate(u, right)
    return total


def cocycle_e(ladder: CochainLadder, k: int, u, v, w):
    """E_k(u,v,w) = sum over r+s=k, r,s >= 1 of C_r(C_s(u,v),w) - C_r(u,C_s(v,w))."""
    total = Polynomial.zero(ladder.space)
    for s in range(1, k):
        r = k - s
        Cs, Cr = ladder.cochain(s), ladder.cochain(r)
        left = Cs.evaluate(u, v)
        if not is_zero(left):
            total = total + Cr.evaluate(left, w)
        right = Cs.evaluate(v, w)
        if not is_zero(right):
            total = total - Cr.evaluate(u, right)
    return total


def cocycle_evaluator(ladder: CochainLadder, k: int) -> Evaluator:
    return Evaluator(3, ladder.space, lambda u, v, w: cocycle_e(ladder, k, u, v, w), name=f"E{k}")


def _inverse_series(T: dict, N: int, space) -> dict:
    """Coefficients S_j of H^{-1} for H = Id + sum_k T_k nu^k, as evaluators."""
    S = {0: Identity(space)}
    for j in range(1, N + 1):
        parts = [(i, j - i) for i in range(1, j + 1) if i in T]

        def Sj(u, parts=parts):
            total = Polynomial.zero(space)
            for i, rest in parts:
                inner = S[rest].evaluate(u)
                if not is_zero(inner):
                    total = total - T[i].evaluate(inner)
            return total

        S[j] = Evaluator(1, space, Sj, name=f"Hinv{j}")
    return S


def gauge_transform(ladder: CochainLadder, T_series: dict, N: int) -> CochainLadder:
    """Cochains of u *'' v = H^{-1}(H(u) * H(v)) for H = Id + sum_k T_k nu^k, through order N."""
    space = ladder.space
    T = {k: op for k, op in T_series.items() if op is not None and 1 <= k <= N}
    for k, op in T.items():
        if op.arity != 1:
            raise ValueError(f"gauge term of order {k} must be unary")
    if not T:
        return ladder.truncated(N)
    S = _inverse_series(T, N, space)
    Tfull = dict(T)
    Tfull[0] = Identity(space)
    entries = {0: ladder.cochain(0)}
    for n in range(1, N + 1):
        def Cn(u, v, n=n):
            Tu = {a: Tfull[a].evaluate(u) for a in Tfull if a <= n}
            Tv = {b: Tfull[b].evaluate(v) for b in Tfull if b <= n}
            total = Polynomial.zero(space)
            for j in range(n + 1):
                inner = Polynomial.zero(space)
                for a, ua in Tu.items():
                    if is_zero(ua):
                        continue
                    for b, vb in Tv.items():
                        m = n - j - a - b
                        if m < 0 or is_zero(vb):
                            continue
                        val = ladder.cochain(m).evaluate(ua, vb)
                        if not is_zero(val):
                            inner = inner + val
                if not is_zero(inner):
                    total = total + S[j].evaluate(inner)
            return total

        entries[n] = Evaluator(2, space, Cn, name=f"gauge{n}")
    return CochainLadder(entries, name=f"gauge({ladder.name})", flags={})
