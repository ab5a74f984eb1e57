"""Rational functions, multivariate gcd and substitution.

The gcd uses the recursive content / primitive-part scheme with a primitive
pseudo-remainder sequence in the highest-index variable present.  That is
slow in general but the denominators met in this package are monomials,
chart denominators and powers of small quadratics, for which it is quick.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .polynomial import Polynomial, VarSpace


class ZeroDenominatorError(ZeroDivisionError):
    pass


def divmod_poly(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Multivariate division by one divisor in graded-lex order."""
    if b.is_zero():
        raise ZeroDenominatorError("division by the zero polynomial")
    lt_e, lt_c = b.leading_term()
    q: dict = {}
    r: dict = {}
    p = dict(a.terms)
    bt = list(b.terms.items())
    key = lambda e: (sum(e), e)
    while p:
        e = max(p, key=key)
        c = p[e]
        if all(x >= y for x, y in zip(e, lt_e)):
            s = tuple(x - y for x, y in zip(e, lt_e))
            f = c / lt_c
            q[s] = q.get(s, 0) + f
            for be, bc in bt:
                ne = tuple(x + y for x, y in zip(be, s))
                v = p.get(ne, 0) - f * bc
                if v:
                    p[ne] = v
                else:
                    p.pop(ne, None)
        else:
            r[e] = c
            del p[e]
    return (Polynomial._raw(a.space, {k: v for k, v in q.items() if v}),
            Polynomial._raw(a.space, r))


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial | None:
    """a / b when b divides a exactly, otherwise None."""
    if b.is_constant():
        c = b.constant_value()
        if not c:
            raise ZeroDenominatorError("division by the zero polynomial")
        return a * (1 / c)
    if a.is_zero():
        return a
    if b.is_monomial():
        (be, bc), = b.terms.items()
        t = {}
        for e, c in a.terms.items():
            ne = tuple(x - y for x, y in zip(e, be))
            if min(ne) < 0:
                return None
            t[ne] = c / bc
        return Polynomial._raw(a.space, t)
    q, r = divmod_poly(a, b)
    return q if r.is_zero() else None


def monic(p: Polynomial) -> Polynomial:
    if p.is_zero():
        return p
    lc = p.leading_coefficient()
    return p if lc == 1 else p * (1 / lc)


def _coeffs_in(p: Polynomial, v: int) -> dict[int, Polynomial]:
    parts: dict[int, dict] = {}
    for e, c in p.terms.items():
        k = e[v]
        parts.setdefault(k, {})[e[:v] + (0,) + e[v + 1:]] = c
    return {k: Polynomial._raw(p.space, t) for k, t in parts.items()}


def _content_in(p: Polynomial, v: int) -> Polynomial:
    g = None
    for c in _coeffs_in(p, v).values():
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return Polynomial.one(p.space)
    return monic(g)


def _lead_in(p: Polynomial, v: int):
    cs = _coeffs_in(p, v)
    d = max(cs)
    return d, cs[d]


def _pseudo_rem(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    db, lcb = _lead_in(b, v)
    while not a.is_zero():
        da, lca = _lead_in(a, v)
        if da < db:
            break
        shift = [0] * len(a.space)
        shift[v] = da - db
        a = lcb * a - (lca * b).mul_monomial(shift)
    return a


def _primitive(p: Polynomial, v: int) -> Polynomial:
    c = _content_in(p, v)
    return p if c.is_constant() else divide_exact(p, c)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor over the rationals."""
    if a.is_zero():
        return monic(b)
    if b.is_zero():
        return monic(a)
    if a.is_constant() or b.is_constant():
        return Polynomial.one(a.space)
    if a.is_monomial() or b.is_monomial():
        if b.is_monomial():
            a, b = b, a
        (me, _), = a.terms.items()
        low = list(me)
        for e in b.terms:
            low = [min(x, y) for x, y in zip(low, e)]
        return Polynomial.monomial(a.space, low)
    if a == b:
        return monic(a)
    va, vb = a.variables(), b.variables()
    v = max(va | vb)
    if v not in va:
        return poly_gcd(a, _content_in(b, v))
    if v not in vb:
        return poly_gcd(_content_in(a, v), b)
    ca, cb = _content_in(a, v), _content_in(b, v)
    g_cont = poly_gcd(ca, cb)
    pa = a if ca.is_constant() else divide_exact(a, ca)
    pb = b if cb.is_constant() else divide_exact(b, cb)
    if _lead_in(pa, v)[0] < _lead_in(pb, v)[0]:
        pa, pb = pb, pa
    while True:
        r = _pseudo_rem(pa, pb, v)
        if r.is_zero():
            g = pb
            break
        if v not in r.variables():
            g = Polynomial.one(a.space)
            break
        pa, pb = pb, _primitive(r, v)
    return monic(g_cont * g)


class RationalFunction:
    """Quotient of polynomials in canonical form.

    The pair is gcd-reduced and the denominator is monic under graded-lex
    order, so equal rational functions have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, *, reduce: bool = True):
        if den is None:
            den = Polynomial.one(num.space)
        if num.space != den.space:
            raise ValueError("numerator and denominator over different varspaces")
        if den.is_zero():
            raise ZeroDenominatorError("zero denominator")
        if reduce:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den

    @property
    def space(self) -> VarSpace:
        return self.num.space

    @classmethod
    def lift(cls, x, space: VarSpace | None = None) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial):
            return cls._raw(x, Polynomial.one(x.space))
        if space is None:
            raise TypeError("scalar lift needs a varspace")
        return cls._raw(Polynomial.constant(space, x), Polynomial.one(space))

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        return r

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def to_polynomial(self) -> Polynomial:
        if not self.den.is_constant():
            raise ValueError(f"{self} is not a polynomial")
        return self.num * (1 / self.den.constant_value())

    def _lift_other(self, other):
        if isinstance(other, RationalFunction):
            if other.space != self.space:
                raise ValueError("varspace mismatch")
            return other
        if isinstance(other, Polynomial):
            if other.space != self.space:
                raise ValueError("varspace mismatch")
            return RationalFunction._raw(other, Polynomial.one(self.space))
        if isinstance(other, (int, Fraction)):
            return RationalFunction._raw(Polynomial.constant(self.space, other), Polynomial.one(self.space))
        return None

    def __add__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        d1 = divide_exact(self.den, g)
        d2 = divide_exact(o.den, g)
        return RationalFunction(self.num * d2 + o.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalFunction._raw(Polynomial.zero(self.space), Polynomial.one(self.space))
            return RationalFunction._raw(self.num * other, self.den)
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RationalFunction._raw(Polynomial.zero(self.space), Polynomial.one(self.space))
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = divide_exact(self.num, g1) if not g1.is_constant() else self.num
        d2 = divide_exact(o.den, g1) if not g1.is_constant() else o.den
        n2 = divide_exact(o.num, g2) if not g2.is_constant() else o.num
        d1 = divide_exact(self.den, g2) if not g2.is_constant() else self.den
        return RationalFunction._raw(*_normalize_lc(n1 * n2, d1 * d2))

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDenominatorError("inverse of zero")
        return RationalFunction._raw(*_normalize_lc(self.den, self.num))

    def __truediv__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._raw(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._lift_other(other) if not isinstance(other, RationalFunction) else other
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, i: int, k: int = 1) -> "RationalFunction":
        r = self
        for _ in range(k):
            r = r._diff1(i)
        return r

    def _diff1(self, i):
        if self.den.is_constant():
            return RationalFunction._raw(self.num.diff(i), self.den)
        dd = self.den.diff(i)
        if dd.is_zero():
            return RationalFunction(self.num.diff(i), self.den)
        g = poly_gcd(self.den, dd)
        dg = divide_exact(self.den, g)
        ddg = divide_exact(dd, g)
        return RationalFunction(self.num.diff(i) * dg - self.num * ddg, self.den * dg)

    def diff_multi(self, alpha) -> "RationalFunction":
        r = self
        for i, k in enumerate(alpha):
            if k:
                r = r.diff(i, k)
        return r

    def __str__(self):
        if self.den.is_constant():
            return str(self.to_polynomial())
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _normalize_lc(num, den):
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return num, den


def _canonical(num: Polynomial, den: Polynomial):
    if num.is_zero():
        return num, Polynomial.one(num.space)
    if den.is_constant():
        return num * (1 / den.constant_value()), Polynomial.one(num.space)
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = divide_exact(num, g)
        den = divide_exact(den, g)
    return _normalize_lc(num, den)


def rf_reduce(num: Polynomial, den: Polynomial) -> RationalFunction:
    return RationalFunction(num, den)


def simplify(x):
    """Demote a rational function with constant denominator to a polynomial."""
    if isinstance(x, RationalFunction) and x.den.is_constant():
        return x.to_polynomial()
    return x


def substitute(f, assignment: Mapping[str, object], target: VarSpace) -> RationalFunction:
    """Compose ``f`` with a map sending each of its variables into ``target``.

    ``assignment`` maps variable names of ``f``'s space to polynomials or
    rational functions over ``target``.  All terms are brought over a single
    common denominator before one final reduction.
    """
    if isinstance(f, RationalFunction):
        n = substitute(f.num, assignment, target)
        d = substitute(f.den, assignment, target)
        if d.is_zero():
            raise ZeroDenominatorError(f"denominator of {f} vanishes after substitution")
        return n / d
    if isinstance(f, (int, Fraction)):
        return RationalFunction.lift(f, target)
    space = f.space
    used = f.variables()
    vals = {}
    for i in used:
        name = space.names[i]
        if name not in assignment:
            raise KeyError(f"variable {name!r} is not assigned")
        vals[i] = RationalFunction.lift(assignment[name], target)
    top = {i: max(e[i] for e in f.terms) for i in used}
    num_pows: dict = {}
    den_pows: dict = {}

    def npow(i, k):
        key = (i, k)
        if key not in num_pows:
            num_pows[key] = vals[i].num ** k
        return num_pows[key]

    def dpow(i, k):
        key = (i, k)
        if key not in den_pows:
            den_pows[key] = vals[i].den ** k
        return den_pows[key]

    total = Polynomial.zero(target)
    for e, c in f.terms.items():
        term = Polynomial.constant(target, c)
        for i in used:
            term = term * npow(i, e[i]) * dpow(i, top[i] - e[i])
        total = total + term
    den = Polynomial.one(target)
    for i in used:
        den = den * dpow(i, top[i])
    return RationalFunction(total, den)
