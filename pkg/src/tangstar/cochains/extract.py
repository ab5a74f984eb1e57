"""Recover the operator form of a multilinear black box.

With f_a = x^a / a! one has d^alpha f_a = f_{a - alpha}, so for an s-ary
differential operator

    F(f_{a_1}, ..., f_{a_s}) = sum_{alpha_l <= a_l} c_alpha * prod f_{a_l - alpha_l}

and the coefficients follow by Möbius inversion with g_k = (-x)^k / k!:

    c_a = sum_{alpha_l <= a_l} F(f_alpha) * prod g_{a_l - alpha_l}

This triangular solve is exact for polynomial and rational coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial

from ..exact import Polynomial, RationalFunction, VarSpace, simplify
from .base import Cochain, is_zero
from .operators import MultiDiffOperator


class RepresentationError(ValueError):
    """The black box is not a differential operator within the given bounds."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


def _divided_power(space, a) -> Polynomial:
    d = 1
    for k in a:
        d *= factorial(k)
    return Polynomial.monomial(space, a, Fraction(1, d))


def _signed_divided_power(space, a) -> Polynomial:
    d = 1
    for k in a:
        d *= factorial(k)
    return Polynomial.monomial(space, a, Fraction((-1) ** sum(a), d))


def _multi_indices_upto(space: VarSpace, order: int):
    return list(space.monomials_upto(order))


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def extract_operator(F: Cochain, order_bound: int, coeff_degree_bound=None,
                     verify_degree=None, name=None) -> MultiDiffOperator:
    """Operator form of ``F`` with slot orders <= order_bound.

    Coefficients must be polynomials of degree <= ``coeff_degree_bound``
    when that bound is given.  The result is re-evaluated against ``F`` on
    all monomial tuples of per-slot degree <= ``verify_degree`` (default
    order_bound + 1), which certifies that no higher-order terms were cut
    off within that range.
    """
    space = F.space
    s = F.arity
    idx = _multi_indices_upto(space, order_bound)
    fpow = {a: _divided_power(space, a) for a in idx}
    gpow = {a: _signed_divided_power(space, a) for a in idx}
    values: dict = {}

    def Fval(key):
        v = values.get(key)
        if v is None:
            v = F.evaluate(*(fpow[a] for a in key))
            values[key] = v
        return v

    terms: dict = {}
    for key in product(idx, repeat=s):
        total = Polynomial.zero(space)
        for sub in product(*([b for b in idx if _leq(b, a)] for a in key)):
            val = Fval(sub)
            if is_zero(val):
                continue
            weight = Polynomial.one(space)
            for a, b in zip(key, sub):
                weight = weight * gpow[tuple(x - y for x, y in zip(a, b))]
            total = total + val * weight
        total = simplify(total)
        if is_zero(total):
            continue
        if coeff_degree_bound is not None:
            if not isinstance(total, Polynomial) or total.degree() > coeff_degree_bound:
                raise RepresentationError(
                    f"coefficient of {key} is {total}, outside the coefficient bound {coeff_degree_bound}",
                    witness=(key, total),
                )
        terms[key] = total
    op = MultiDiffOperator(space, s, terms, name=name or f"op({F.name})")
    vdeg = order_bound + 1 if verify_degree is None else verify_degree
    for key in product(list(space.monomials_upto(vdeg)), repeat=s):
        args = [Polynomial.monomial(space, a) for a in key]
        diff = simplify(F.evaluate(*args) - op.evaluate(*args))
        if not is_zero(diff):
            raise RepresentationError(
                f"residual {diff} on monomials {key}: not representable within order {order_bound}",
                witness=(key, diff),
            )
    return op
