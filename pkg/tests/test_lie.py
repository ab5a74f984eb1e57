from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import gutt as gutt_oracle
from oracles import poisson as poisson_oracle

from tangstar.cochains import hochschild_coboundary, monomial_tuples, unary
from tangstar.exact import Polynomial, parse_polynomial
from tangstar.fixtures import load_fixture
from tangstar.lie import (
    AntisymmetryError,
    GuttCochain,
    JacobiError,
    JordanHolderError,
    MissingCochainError,
    PBWElement,
    associator_defect,
    cocycle_e,
    gauge_transform,
    graded_decompose,
    gutt_cochain,
    gutt_ladder,
    is_invariant,
    pbw_reduce,
    poisson_bracket,
    star_truncated,
    symmetrize,
    validate_lie_algebra,
)

HEIS = validate_lie_algebra(3, {(3, 2): {1: 1}}, name="h3")
G54 = load_fixture("g54").algebra


def poly(L, text):
    return parse_polynomial(text, L.space)


# -- validation ---------------------------------------------------------------------------

def test_antisymmetry_violation():
    with pytest.raises(AntisymmetryError):
        validate_lie_algebra(3, {(3, 2): {1: 1}, (2, 3): {1: 1}})
    with pytest.raises(AntisymmetryError):
        validate_lie_algebra(2, {(2, 2): {1: 1}})


def test_jordan_holder_violation():
    with pytest.raises(JordanHolderError) as exc:
        validate_lie_algebra(3, {(3, 1): {2: 1}})
    assert exc.value.witness == (3, 1, 2)


def test_jacobi_violation_has_witness():
    # g54 plus [4,2] = x1 stays triangular but breaks Jacobi on (3, 4, 5)
    with pytest.raises(JacobiError) as exc:
        validate_lie_algebra(5, {(5, 4): {3: 1}, (5, 3): {2: 1}, (4, 3): {1: 1}, (4, 2): {1: 1}})
    assert exc.value.witness[:3] == (3, 4, 5)


def test_fixture_algebras_validate(g54, g612, g614):
    assert (g54.algebra.dim, g612.algebra.dim, g614.algebra.dim) == (5, 6, 6)


# -- Poisson bracket ----------------------------------------------------------------------------

def test_coordinate_brackets_g54(L54):
    # reference: [5,4] = x3, [5,3] = x2, [4,3] = x1
    x = [Polynomial.var(L54.space, i) for i in range(5)]
    assert poisson_bracket(L54, x[4], x[3]) == x[2]
    assert poisson_bracket(L54, x[4], x[2]) == x[1]
    assert poisson_bracket(L54, x[3], x[2]) == x[0]
    assert poisson_bracket(L54, x[3], x[4]) == -x[2]
    assert not poisson_bracket(L54, x[0], x[4])


def test_poisson_matches_oracle(L54):
    # oracle: direct double sum over structure constants
    for u, v in monomial_tuples(L54.space, 2, 4):
        assert poisson_bracket(L54, u, v) == poisson_oracle(L54, u, v)


def test_invariants_are_central(g54):
    # reference: x1, x2, Delta generate the invariants of g54
    for P in g54.invariants:
        assert is_invariant(g54.algebra, P) == (True, None)
    ok, (i, val) = is_invariant(g54.algebra, poly(g54.algebra, "x3"))
    assert not ok and i == 4 and val == poly(g54.algebra, "x1")


# -- enveloping algebra -------------------------------------------------------------------------

def test_pbw_commutator(L54):
    # by hand: X5 X4 = X4 X5 + X3
    e = pbw_reduce(L54, {(5, 4): 1})
    assert e.terms == {(3, 4): Fraction(1), (2,): Fraction(1)}


def test_pbw_rejects_unordered_words(L54):
    with pytest.raises(ValueError):
        PBWElement(L54, {(4, 3): 1})


def test_symmetrization_of_degree_two(L54):
    # by hand: sigma(x4 x5) = (X4 X5 + X5 X4)/2 = X4 X5 + X3/2
    s = symmetrize(L54, poly(L54, "x4*x5"))
    assert s.terms == {(3, 4): Fraction(1), (2,): Fraction(1, 2)}


def test_graded_decompose_inverts_symmetrize(L54):
    for k in range(6):
        for e in L54.space.monomials(k):
            P = Polynomial.monomial(L54.space, e, 3)
            assert graded_decompose(symmetrize(L54, P)) == {k: P}


# -- Gutt cochains ------------------------------------------------------------------------------------

@pytest.mark.parametrize("fixture", ["g54", "g614"])
def test_gutt_matches_word_rewriting_oracle(fixture, request):
    # oracle: enumeration of orderings plus bubble rewriting
    L = request.getfixturevalue(fixture).algebra
    for u, v in monomial_tuples(L.space, 2, 4 if fixture == "g54" else 3):
        for n in range(4):
            assert gutt_cochain(L, n, u, v) == gutt_oracle(L, n, u, v), (n, u, v)


def moyal(L, n, u, v):
    """Heisenberg: C_n = P^n / n! with P = x1 (d3 (x) d2 - d2 (x) d3)."""
    total = Polynomial.zero(L.space)
    x1 = Polynomial.var(L.space, 0)
    for k in range(n + 1):
        a = (0, k, n - k)
        b = (0, n - k, k)
        total = total + u.diff_multi(a) * v.diff_multi(b) * ((-1) ** k * comb(n, k))
    return total * x1 ** n * Fraction(1, factorial(n))


def test_gutt_is_moyal_on_heisenberg():
    # oracle: closed Moyal formula for the Heisenberg algebra
    for u, v in monomial_tuples(HEIS.space, 2, 6):
        for n in range(5):
            assert gutt_cochain(HEIS, n, u, v) == moyal(HEIS, n, u, v), (n, u, v)


def test_gutt_frozen_values(g54):
    # frozen from the word-rewriting oracle
    L = g54.algebra
    assert gutt_cochain(L, 2, g54.delta, poly(L, "x4^2")) == poly(L, "1/3*x1^2")
    assert gutt_cochain(L, 2, poly(L, "x5^2"), poly(L, "x4^2")) == poly(L, "-4/3*x1*x5 + 4/3*x2*x4 + 2*x3^2")
    assert gutt_cochain(L, 3, poly(L, "x5^2"), poly(L, "x4^3")) == gutt_oracle(L, 3, poly(L, "x5^2"), poly(L, "x4^3"))


def test_gutt_parity_and_constants(L54):
    one = Polynomial.one(L54.space)
    for n in range(1, 4):
        C = GuttCochain(L54, n)
        for (u,) in monomial_tuples(L54.space, 1, 4):
            assert not C.evaluate(one, u)
        for u, v in monomial_tuples(L54.space, 2, 4):
            assert C.evaluate(u, v) == C.evaluate(v, u) * (-1) ** n


# -- ladders, star products, gauge -----------------------------------------------------------------

def test_star_truncated_printing(L54):
    # by hand: u * v = uv + {u, v} nu + ...
    s = star_truncated(gutt_ladder(L54, 2), poly(L54, "x5"), poly(L54, "x4"), 2)
    assert s.coefficients == [poly(L54, "x4*x5"), poly(L54, "x3"), Polynomial.zero(L54.space)]
    assert str(s) == "x4*x5 + x3*v + 0*v^2"


def test_missing_cochain(L54):
    lad = gutt_ladder(L54, 1)
    with pytest.raises(MissingCochainError):
        star_truncated(lad, poly(L54, "x5"), poly(L54, "x4"), 2)


def test_associator_defect_is_cocycle_when_order_missing(L54):
    lad = gutt_ladder(L54, 2)
    for args in monomial_tuples(L54.space, 3, 4, min_slot_degree=1):
        assert associator_defect(lad, 3, *args) == cocycle_e(lad, 3, *args)


def test_gauge_by_identity_is_trivial(L54):
    lad = gutt_ladder(L54, 3)
    moved = gauge_transform(lad, {}, 3)
    for u, v in monomial_tuples(L54.space, 2, 3):
        assert moved.cochain(2).evaluate(u, v) == lad.cochain(2).evaluate(u, v)


def test_gauge_order_two_adds_coboundary(L54):
    # a unary T at order 2 shifts C_2 by delta T and leaves C_0, C_1 alone
    T = unary(L54.space, {(4, 4): poly(L54, "x1")})
    lad = gutt_ladder(L54, 2)
    moved = gauge_transform(lad, {2: T}, 2)
    dT = hochschild_coboundary(T)
    for u, v in monomial_tuples(L54.space, 2, 4):
        assert moved.cochain(1).evaluate(u, v) == lad.cochain(1).evaluate(u, v)
        assert moved.cochain(2).evaluate(u, v) == lad.cochain(2).evaluate(u, v) + dT.evaluate(u, v)


def test_gauge_rejects_non_unary(L54):
    with pytest.raises(ValueError):
        gauge_transform(gutt_ladder(L54, 2), {2: GuttCochain(L54, 2)}, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 4), st.lists(st.integers(0, 2), min_size=5, max_size=5),
       st.lists(st.integers(0, 2), min_size=5, max_size=5))
def test_gutt_degree_drop(n, e1, e2):
    L = G54
    u, v = Polynomial.monomial(L.space, tuple(e1)), Polynomial.monomial(L.space, tuple(e2))
    val = gutt_cochain(L, n, u, v)
    assert not val or (val.is_homogeneous() and val.degree() == sum(e1) + sum(e2) - n)
