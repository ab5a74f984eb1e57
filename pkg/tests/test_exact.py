from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from tangstar.exact import (
    ParseError,
    Polynomial,
    RationalFunction,
    UnknownVariableError,
    VarSpace,
    ZeroDenominatorError,
    divide_exact,
    parse_expression,
    parse_polynomial,
    poly_arith,
    poly_gcd,
    simplify,
    solve_exact,
    substitute,
)

X = VarSpace.numbered("x", 3)
SYMS = sp.symbols("x1 x2 x3")


def P(text):
    return parse_polynomial(text, X)


def to_sympy(f):
    if isinstance(f, RationalFunction):
        return to_sympy(f.num) / to_sympy(f.den)
    out = sp.Integer(0)
    for e, c in f.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, k in zip(SYMS, e):
            term *= s ** k
        out += term
    return out


def same(f, expr):
    return sp.simplify(to_sympy(f) - expr) == 0


coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*(st.integers(0, 3) for _ in range(3)))
polys = st.dictionaries(exps, coef, max_size=4).map(lambda d: Polynomial(X, d))


# -- polynomials ------------------------------------------------------------

def test_zero_terms_are_dropped():
    # by hand
    p = Polynomial(X, {(1, 0, 0): 0, (0, 1, 0): Fraction(2)})
    assert p.terms == {(0, 1, 0): Fraction(2)}
    assert not Polynomial.zero(X)


def test_degree_of_zero_is_negative_infinity():
    # by hand
    assert Polynomial.zero(X).degree() == float("-inf")
    assert P("x1^2*x3 + x2").degree() == 3


def test_printing_is_canonical():
    # by hand: grlex order, rational coefficients
    assert str(P("x2 + 1/2*x1^2 - 3")) == "1/2*x1^2 + x2 - 3"
    assert str(Polynomial.zero(X)) == "0"


def test_varspace_mismatch_is_rejected():
    Y = VarSpace.numbered("y", 3)
    with pytest.raises(ValueError):
        poly_arith(P("x1"), Polynomial.var(Y, 0), "add")


def test_homogeneous_components():
    # by hand
    comps = P("x1^2 + x2 - 1").homogeneous_components()
    assert comps == {0: P("-1"), 1: P("x2"), 2: P("x1^2")}


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Polynomial.zero(X)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_product_agrees_with_sympy(a, b):
    # oracle: sympy expansion
    assert same(a * b, sp.expand(to_sympy(a) * to_sympy(b)))


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_leibniz_rule(a, b):
    for i in range(3):
        assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


def test_multi_derivative():
    # by hand: d^2/dx1 dx2 of x1^2 x2^3 = 6 x1 x2^2
    assert P("x1^2*x2^3").diff_multi((1, 1, 0)) == P("6*x1*x2^2")


# -- rational functions ----------------------------------------------------------

def test_gcd_and_exact_division():
    # oracle: sympy gcd
    a = P("(x1 + x2)^2*(x1 - x3)")
    b = P("(x1 + x2)*(x1^2 + x3)")
    g = poly_gcd(a, b)
    assert sp.simplify(to_sympy(g) / sp.gcd(to_sympy(a), to_sympy(b))).is_number
    assert divide_exact(a, g) * g == a
    assert divide_exact(P("x1^2 + 1"), P("x1")) is None


def test_rational_function_reduces():
    f = parse_expression("(x1^2 - x2^2)/(x1 + x2)", X)
    assert isinstance(f, Polynomial)
    assert f == P("x1 - x2")
    g = parse_expression("x1/(2*x1*x2)", X)
    assert isinstance(g, RationalFunction)
    assert same(g, 1 / (2 * SYMS[1]))


def test_rational_function_derivative_quotient_rule():
    # oracle: sympy differentiation
    f = parse_expression("x1*x3/(x1^2 + x2^2 + x3^2)", X)
    expr = to_sympy(f)
    for i, s in enumerate(SYMS):
        assert same(f.diff(i), sp.diff(expr, s))


def test_zero_denominator():
    with pytest.raises(ZeroDenominatorError):
        parse_expression("x1/(x2 - x2)", X)


def test_substitution_composes():
    Y = VarSpace(["a", "b"])
    f = P("x1*x2 + x3^2")
    g = substitute(f, {"x1": parse_expression("a/b", Y), "x2": Polynomial.var(Y, "b"),
                       "x3": Polynomial.var(Y, "a")}, Y)
    assert simplify(g) == parse_polynomial("a + a^2", Y)


# -- parser -------------------------------------------------------------------------

@pytest.mark.parametrize("text", ["x1 +", "x1 ** 2", "(x1", "x1^-1", "2 x1 x2 $"])
def test_malformed_expressions(text):
    with pytest.raises(ParseError):
        parse_expression(text, X)


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_expression("x9 + 1", X)


def test_unary_minus_and_fractions():
    # by hand
    assert P("-x1^2/2 + 2/3*x2") == Polynomial(X, {(2, 0, 0): Fraction(-1, 2), (0, 1, 0): Fraction(2, 3)})
    assert P("(2*x1)/3") == P("2/3*x1")


@settings(max_examples=60, deadline=None)
@given(polys)
def test_print_parse_round_trip(a):
    assert P(str(a)) == a


# -- linear algebra ----------------------------------------------------------------------

def test_solve_exact_consistent_with_nullspace():
    # oracle: sympy nullspace dimension
    A = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    b = [6, 12, 2]
    res = solve_exact(A, b)
    assert res.consistent
    x = res.particular
    assert [sum(Fraction(a) * v for a, v in zip(row, x)) for row in A] == [Fraction(v) for v in b]
    assert len(res.nullspace) == len(sp.Matrix(A).nullspace())
    for n in res.nullspace:
        assert all(sum(Fraction(a) * v for a, v in zip(row, n)) == 0 for row in A)


def test_solve_exact_inconsistent():
    res = solve_exact([[1, 1], [2, 2]], [1, 3])
    assert res.status == "inconsistent"


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_exact_recovers_planted_solution(A, x0):
    b = [sum(a * v for a, v in zip(row, x0)) for row in A]
    res = solve_exact(A, b)
    assert res.consistent
    assert len(res.nullspace) == 4 - sp.Matrix(A).rank()
    for row, rhs in zip(A, b):
        assert sum(Fraction(a) * v for a, v in zip(row, res.particular)) == rhs
