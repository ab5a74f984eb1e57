import pytest

from tangstar.cochains import (
    ChartError,
    Evaluator,
    MultiDiffOperator,
    NotACocycleError,
    OperatorFormatError,
    RepresentationError,
    build_chart,
    check_vanishing,
    extract_operator,
    hochschild_coboundary,
    is_correct,
    is_homogeneous,
    is_tangential,
    localized_evaluate,
    monomial_tuples,
    p_degree,
    parse_operator,
    solve_coboundary,
    torus_weights,
    unary,
    verify_coboundary,
)
from tangstar.exact import Polynomial, RationalFunction, VarSpace, parse_expression, parse_polynomial
from tangstar.lie import GuttCochain, validate_lie_algebra
from tangstar.suites import trivector

X = VarSpace.numbered("x", 3)


def P(text, space=X):
    return parse_polynomial(text, space)


# -- operators -----------------------------------------------------------------------------------

def test_operator_evaluation():
    # by hand: x1 d2 (x) d3^2 on (x2^2, x3^3) = x1 * 2 x2 * 6 x3
    D = parse_operator("term x1 ; [2] | [3,3]", X)
    assert D.arity == 2 and D.order() == 3
    assert D.evaluate(P("x2^2"), P("x3^3")) == P("12*x1*x2*x3")


def test_operator_parse_errors():
    with pytest.raises(OperatorFormatError):
        parse_operator("term x1 ; [2] | [3]\nterm x2 ; [1]", X)
    with pytest.raises(OperatorFormatError):
        parse_operator("term x1 ; 2", X)
    with pytest.raises(OperatorFormatError):
        parse_operator("term x1 ; [7]", X)
    with pytest.raises(OperatorFormatError):
        parse_operator("term 1 ; [] | [1]", X, require_vanishing=True)


def test_operator_text_round_trip():
    D = parse_operator("term x1/(x2 + 1) ; [1,2] | [3]\nterm -2/3 ; [1] | [1]", X)
    assert parse_operator(D.to_text(), X) == D


def test_coboundary_closed_form_matches_evaluation():
    # two routes: closed operator form versus the defining alternating sum
    D = parse_operator("term x1 ; [2] | [3,3]\nterm x2*x3 ; [1,1] | [2]", X)
    closed = hochschild_coboundary(D)
    generic = hochschild_coboundary(Evaluator(2, X, D.evaluate))
    assert isinstance(closed, MultiDiffOperator)
    for args in monomial_tuples(X, 3, 5):
        assert closed.evaluate(*args) == generic.evaluate(*args)


def test_coboundary_of_unary():
    # by hand: delta(d1^2)(u, v) = -2 d1 u d1 v
    d = hochschild_coboundary(unary(X, {(1, 1): 1}))
    assert d == parse_operator("term -2 ; [1] | [1]", X)


def test_compose_unary():
    # by hand: (x1 d1) o (x1 d1) = x1 d1 + x1^2 d1^2
    E = unary(X, {(1,): P("x1")})
    assert E.compose(E) == unary(X, {(1,): P("x1"), (1, 1): P("x1^2")})


# -- extraction --------------------------------------------------------------------------------------

def test_extract_recovers_operator():
    D = parse_operator("term x1 ; [2] | [3,3]\nterm 1/2*x2^2 ; [1,1] | [2]\nterm x3 ; [1] | [1]", X)
    F = Evaluator(2, X, D.evaluate)
    assert extract_operator(F, 2, 2) == D


def test_extract_reports_non_polynomial_or_high_order():
    F = Evaluator(1, X, lambda u: u.diff(0, 3))
    with pytest.raises(RepresentationError):
        extract_operator(F, 2, 2)


def test_extract_c2g_delta_g54(g54):
    # reference: C2G(Delta, .) = x1^2/6 d44 + x1 x2/3 d45 + x2^2/6 d55
    op = g54.c2g_delta_extracted
    assert op == parse_operator("term x1^2/6 ; [4,4]\nterm x1*x2/3 ; [4,5]\nterm x2^2/6 ; [5,5]", g54.space)


# -- checks ---------------------------------------------------------------------------------------------

def test_homogeneous_failure_has_witness():
    D = parse_operator("term x1 ; [1] | [1]\nterm 1 ; [1] | [1]", X)
    rep = is_homogeneous(D, 1, 3)
    assert not rep.passed
    assert "stray_component" in rep.witness


def test_vanishing_failure_has_slot():
    D = parse_operator("term 1 ; [] | [1]", X)
    rep = check_vanishing(D, 2)
    assert not rep.passed and rep.witness["slot"] == 1


def test_tangential_needs_invariants():
    L = validate_lie_algebra(3, {(3, 2): {1: 1}})
    with pytest.raises(ValueError):
        is_tangential(L, GuttCochain(L, 2), 3)


def test_tangential_witness_for_gutt(g54):
    rep = is_tangential(g54.algebra, GuttCochain(g54.algebra, 2), 4)
    assert not rep.passed
    assert rep.witness["invariant"] == g54.delta


def test_localized_evaluation_of_non_operator(g54):
    L = g54.algebra
    C2 = GuttCochain(L, 2)
    u = parse_expression("x4^2/x1", L.space)
    val = localized_evaluate(C2, (u, g54.delta))
    assert val == RationalFunction.lift(C2.evaluate(P("x4^2", L.space), g54.delta)) / P("x1", L.space)


# -- charts -------------------------------------------------------------------------------------------------

def test_chart_round_trip_and_p_degree(g54):
    ch = g54.chart
    x5 = P("x5", g54.space)
    pushed = ch.push(x5)
    assert ch.pull(pushed) == x5
    assert p_degree(ch, x5) == 1
    assert p_degree(ch, g54.delta) == 0


def test_chart_rejects_bad_inverse(L54):
    fwd = {"p1": P("x4", L54.space), "q1": parse_expression("x3/x1", L54.space),
           "lambda1": P("x1", L54.space), "lambda2": P("x2", L54.space), "lambda3": P("x5", L54.space)}
    cs = VarSpace(["p1", "q1", "lambda1", "lambda2", "lambda3"])
    inv = {f"x{i}": Polynomial.var(cs, n) for i, n in zip(range(1, 6), ["lambda1", "lambda2", "q1", "p1", "lambda3"])}
    with pytest.raises(ChartError):
        build_chart(L54.space, fwd, inv)


def test_is_correct_on_gutt_c2(g54):
    assert is_correct(g54.chart, GuttCochain(g54.algebra, 2), 2, 4).passed


# -- solver ---------------------------------------------------------------------------------------------------

def test_torus_weights_g54(L54):
    # weights w with w3 = w4 + w5, w2 = w3 + w5, w1 = w3 + w4
    W = torus_weights(L54)
    assert len(W) == 2
    for w in W:
        assert w[2] == w[3] + w[4] and w[1] == w[2] + w[4] and w[0] == w[2] + w[3]


def test_solver_recovers_planted_coboundary(L54):
    # E = delta(C) for a symmetric bidifferential C; the solver finds some C' with delta(C') = E
    C = parse_operator("term x2 ; [5,5] | [4]\nterm x2 ; [4] | [5,5]", L54.space)
    E = hochschild_coboundary(C)
    sol = solve_coboundary(L54, E, 2, 3, 5, {"vanishing", "homogeneous", "skew"})
    assert sol.status == "solved"
    assert verify_coboundary(sol.operator, E, 5, lo=0).passed
    assert verify_coboundary(sol.operator, E, 7, lo=6, sample=30, seed=3).passed


def test_solver_infeasible_for_trivector(L54):
    sol = solve_coboundary(L54, trivector(L54.space), 3, 2, 3, {"vanishing"}, graded=False)
    assert sol.status == "infeasible"
    assert sol.witness


def test_solver_rejects_non_cocycle(L54):
    E = Evaluator(3, L54.space, lambda u, v, w: u * v.diff(3) * w.diff(3) * w.diff(3))
    with pytest.raises(NotACocycleError):
        solve_coboundary(L54, E, 3, 2, 3)


def test_solver_unknown_constraint(L54):
    with pytest.raises(ValueError):
        solve_coboundary(L54, trivector(L54.space), 3, 2, 3, {"smooth"})


def test_gutt_c3_solves_gutt_e3(L54):
    # skew solutions are unique here, so the solver must reproduce C3G on the grid
    from tangstar.lie import cocycle_evaluator, gutt_ladder

    E = cocycle_evaluator(gutt_ladder(L54, 2), 3)
    sol = solve_coboundary(L54, E, 3, 4, 4, {"skew", "vanishing"})
    assert sol.status == "solved" and sol.nullity == 0
    C3G = GuttCochain(L54, 3)
    for u, v in monomial_tuples(L54.space, 2, 4, min_slot_degree=1):
        assert sol.operator.evaluate(u, v) == C3G.evaluate(u, v)


def test_gutt_ladder_solution_generalizes_out_of_sample(L54):
    # positive control for the out-of-sample check: C3G has bounded order, so degree 6 captures it
    from tangstar.lie import cocycle_evaluator, gutt_ladder
    from tangstar.suites import memoized

    E = memoized(cocycle_evaluator(gutt_ladder(L54, 2), 3))
    sol = solve_coboundary(L54, E, 3, 6, 6, {"skew", "vanishing"})
    assert sol.status == "solved" and sol.nullity == 0
    rep = verify_coboundary(sol.operator, E, 8, lo=7, sample=60, seed=2)
    assert rep.passed, str(rep)
