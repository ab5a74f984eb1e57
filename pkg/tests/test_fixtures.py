import shutil
from fractions import Fraction

import pytest

from tangstar.cochains import monomial_tuples, parse_operator
from tangstar.exact import Polynomial, parse_expression, parse_polynomial, simplify
from tangstar.fixtures import (
    ENV_DIR,
    FixtureError,
    chart_form_operators,
    default_data_dir,
    load_fixture,
    sigma3,
    t_correction,
)
from tangstar.lie import GuttCochain
from tangstar.suites import check_chart_consistency, check_t_tilde

# frozen: chart form of C2G obtained by extraction through pull-back and push-forward
C2G_CHART_TRUE = """
term 1/2 ; [p1,p1] | [q1,q1]
term 1/2 ; [q1,q1] | [p1,p1]
term -1 ; [p1,q1] | [p1,q1]
term lambda1^2/3 ; [lambda3,p1] | [p1]
term lambda1^2/3 ; [p1] | [lambda3,p1]
term lambda1^2/6 ; [lambda3] | [p1,p1]
term lambda1^2/6 ; [p1,p1] | [lambda3]
"""


def px(b, text):
    return parse_polynomial(text, b.space)


def test_unknown_fixture():
    with pytest.raises(FixtureError):
        load_fixture("g99")


def test_fixture_dir_override(tmp_path, monkeypatch):
    for f in default_data_dir().iterdir():
        shutil.copy(f, tmp_path)
    monkeypatch.setenv(ENV_DIR, str(tmp_path))
    assert default_data_dir() == tmp_path
    assert load_fixture("g614").algebra.dim == 6


def test_non_central_invariant_is_rejected(tmp_path):
    shutil.copy(default_data_dir() / "g612.lie", tmp_path)
    text = (tmp_path / "g612.lie").read_text().replace("invariant x1\n", "invariant x2\n")
    (tmp_path / "g612.lie").write_text(text)
    with pytest.raises(FixtureError):
        load_fixture("g612", tmp_path)


def test_g54_only_operations(g612):
    with pytest.raises(FixtureError):
        t_correction(g612)
    with pytest.raises(FixtureError):
        chart_form_operators(g612)


def test_six_dimensional_invariants(g612, g614):
    # reference: invariant generators
    assert g612.invariants[1] == px(g612, "x3^2/2 - x2*x4 + x1*x6")
    assert g614.invariants[1] == px(g614, "x2^3/3 - x1*x3^2/2 + x1*x2*x4 - x1^2*x6")


def test_kappa_is_one(g54):
    assert g54.kappa == Fraction(1)


def test_region(g54):
    assert g54.region.contains({0: 1, 1: 0, 2: 0, 3: 5, 4: 7})
    assert not g54.region.contains({0: 0, 1: 0, 2: 0, 3: 5, 4: 7})


def test_sigma3_flips_x3(g54):
    s = sigma3(g54)
    assert s.evaluate(px(g54, "x3^3*x4 + x3*x5")) == px(g54, "-x3^3*x4 - x3*x5")


def test_t_frozen_values(g54):
    # frozen; T only sees x3-degree >= 2 combined with d4/d5 derivatives
    T = t_correction(g54)
    assert T.evaluate(px(g54, "x3^2*x5^2")) == px(g54, "2/3*x2^2")
    assert not T.evaluate(g54.delta)
    assert not T.evaluate(px(g54, "x4^2*x5^3"))


def test_t_cancels_c2g_on_delta(g54):
    C2 = g54.corrected_c2
    for (v,) in monomial_tuples(g54.space, 1, 5):
        assert not C2.evaluate(g54.delta, v)


def test_a_form_matches_series(g54):
    A = g54.t_a_form()
    for (u,) in monomial_tuples(g54.space, 1, 6):
        assert A.evaluate(u) == g54.T.evaluate(u), u


def test_a_form_without_sixth_in_a45_disagrees(g54, tmp_path):
    # A_45 = x1 x2 / x3^2, without the factor 1/6, does not reproduce the series
    for f in default_data_dir().iterdir():
        shutil.copy(f, tmp_path)
    stem = "g54_t_aform_shift"
    text = (tmp_path / f"{stem}.op").read_text()
    text = "\n".join(
        "term x1*x2/x3^2 ; [4,5]" if line.strip().startswith("term") and "[4,5]" in line else line
        for line in text.splitlines()
    )
    (tmp_path / "unscaled.op").write_text(text)
    b = load_fixture("g54", tmp_path)
    A = b.t_a_form(shift_stem="unscaled")
    u = px(b, "x3^3*x4*x5")
    assert A.evaluate(u) != b.T.evaluate(u)


def test_stored_chart_form_of_c2g_is_not_kappa_multiple(g54):
    # the stored chart form disagrees with the computed one; C2G(x5, x5^2) = 0 separates them
    x5 = px(g54, "x5")
    C2G = GuttCochain(g54.algebra, 2)
    assert not C2G.evaluate(x5, x5 * x5)
    shown = g54.c2g_chart.evaluate(g54.chart.push(x5), g54.chart.push(x5 * x5))
    assert simplify(shown) == parse_expression("-2*lambda2^2/lambda1", g54.chart.cspace)


def test_computed_chart_form(g54):
    cs = g54.chart.cspace
    assert g54.c2g_chart_computed == parse_operator(C2G_CHART_TRUE, cs)
    rep = check_chart_consistency(g54.chart, GuttCochain(g54.algebra, 2), g54.c2g_chart_computed, 5)
    assert rep.passed, str(rep)


def test_t_tilde_is_chart_form_of_t(g54):
    rep = check_t_tilde(g54, 7)
    assert rep.passed, str(rep)
    ops = chart_form_operators(g54)
    assert set(ops) == {"C2G_chart", "T_tilde"}
    # by hand: only the n = 4 term survives: (1/6) (q lambda1^2 d_lambda3 + d_q)^2 (2 q1^2) = 2/3
    p1 = Polynomial.var(g54.chart.cspace, "p1")
    q1 = Polynomial.var(g54.chart.cspace, "q1")
    assert ops["T_tilde"].evaluate(p1 ** 2 * q1 ** 2) == Polynomial.constant(g54.chart.cspace, Fraction(2, 3))


def test_c2_kappa_has_r_denominators(g54):
    C = g54.c2_kappa
    assert not C.is_zero()
    r = g54.r
    dens = {simplify(c).den for c in C.terms.values() if hasattr(simplify(c), "den")}
    assert dens and all(d == r or d == r * r or d == r ** 3 for d in dens)
