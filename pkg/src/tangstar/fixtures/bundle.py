"""Loadable fixtures: algebras, charts, invariants and correction operators.

Operator displays live in ``data/*.op`` and are parsed at load time.  The
normalization kappa of C_{2,G} relative to the stored display of
C_{2,G}(Delta, .) is computed once per bundle by operator extraction and
applied to every correction operator.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from math import factorial
from pathlib import Path

from ..cochains.base import Evaluator, Multiplication, is_zero
from ..cochains.chart import Chart
from ..cochains.extract import extract_operator
from ..cochains.operators import (
    MultiDiffOperator,
    OperatorSeries,
    derivative,
    hochschild_coboundary,
    parse_operator,
)
from ..exact import Polynomial, RationalFunction, simplify
from ..lie.algebra import LieAlgebra, is_invariant
from ..lie.star import CochainLadder, GuttCochain, PoissonCochain, gutt_ladder
from ..specfile import load_algebra

FIXTURE_NAMES = ("g54", "g612", "g614")
ENV_DIR = "TANGSTAR_FIXTURE_DIR"


class FixtureError(ValueError):
    pass


def default_data_dir() -> Path:
    env = os.environ.get(ENV_DIR)
    if env:
        return Path(env)
    return Path(str(resources.files("tangstar.fixtures") / "data"))


@dataclass(frozen=True)
class Region:
    """Open set {r != 0}; used to refuse evaluation at points where r vanishes."""

    name: str
    r: Polynomial

    def contains(self, point) -> bool:
        return self.r.evaluate(point) != 0

    def __str__(self):
        return f"{self.name} = {{ {self.r} != 0 }}"


def _var_degree(f, idx: int) -> int:
    f = simplify(f)
    if isinstance(f, RationalFunction):
        if f.den.degree_in([idx]) > 0:
            raise ValueError("series operators need denominators free of the shifted variable")
        f = f.num
    d = f.degree_in([idx])
    return -1 if d == float("-inf") else int(d)


def _t_coefficient(n: int) -> Fraction:
    return Fraction((-1) ** n * 2 ** (n - 3), 6 * factorial(n - 2))


class FixtureBundle:
    """A validated algebra with the operators attached to it."""

    def __init__(self, name: str, algebra: LieAlgebra, data_dir: Path):
        self.name = name
        self.algebra = algebra
        self.data_dir = data_dir
        for P in algebra.invariants:
            ok, witness = is_invariant(algebra, P)
            if not ok:
                raise FixtureError(f"{name}: declared invariant {P} is not central, {witness}")

    @property
    def space(self):
        return self.algebra.space

    @property
    def chart(self) -> Chart | None:
        return self.algebra.chart

    @property
    def invariants(self):
        return list(self.algebra.invariants)

    def read_operator(self, stem: str, space=None) -> MultiDiffOperator:
        path = self.data_dir / f"{stem}.op"
        return parse_operator(path.read_text(encoding="utf-8"), space or self.space, name=stem)

    def gutt_ladder(self, N: int) -> CochainLadder:
        return gutt_ladder(self.algebra, N)

    def require(self, name):
        if self.name != name:
            raise FixtureError(f"operation defined for {name}, not {self.name}")


class G54Bundle(FixtureBundle):
    """g54 with chart, Delta, the corrections T, T' and their chart forms."""

    @property
    def delta(self) -> Polynomial:
        return self.algebra.invariants[2]

    @cached_property
    def r(self) -> Polynomial:
        x = [Polynomial.var(self.space, i) for i in range(3)]
        return x[0] ** 2 + x[1] ** 2 + x[2] ** 2

    @cached_property
    def region(self) -> Region:
        return Region("Omega", self.r)

    @cached_property
    def c2g_delta_display(self) -> MultiDiffOperator:
        return self.read_operator("g54_c2g_delta")

    @cached_property
    def c2g_delta_extracted(self) -> MultiDiffOperator:
        L, D = self.algebra, self.delta
        F = Evaluator(1, self.space, lambda u: GuttCochain(L, 2).evaluate(D, u), name="C2G(Delta,.)")
        return extract_operator(F, 2, 2, verify_degree=3)

    @cached_property
    def kappa(self) -> Fraction:
        got, shown = self.c2g_delta_extracted, self.c2g_delta_display
        if got.terms.keys() != shown.terms.keys():
            raise FixtureError(f"C2G(Delta, .) = {got} has a different shape from {shown}")
        ratio = None
        for key, c in shown.terms.items():
            q = simplify(RationalFunction.lift(got.terms[key]) / c)
            if not (isinstance(q, Polynomial) and q.is_constant()):
                raise FixtureError(f"non-constant ratio {q} for term {key}")
            if ratio is None:
                ratio = q.constant_value()
            elif ratio != q.constant_value():
                raise FixtureError("C2G(Delta, .) is not a multiple of the stored display")
        return ratio

    @cached_property
    def c2g_operator(self) -> MultiDiffOperator:
        """C_{2,G} in operator form, extracted from the PBW computation and re-verified."""
        return extract_operator(GuttCochain(self.algebra, 2), 2, 2, verify_degree=3, name="C2G")

    @cached_property
    def sigma3(self) -> OperatorSeries:
        space = self.space

        def gen(n):
            c = Polynomial.var(space, 2) ** n * Fraction((-2) ** n, factorial(n))
            e = (0, 0, n, 0, 0)
            return MultiDiffOperator(space, 1, {(e,): c}, name=f"sigma3[{n}]")

        def term_eval(top, u):
            w = u
            x3 = Polynomial.var(space, 2)
            for n in range(top + 1):
                if n:
                    w = derivative(w, (0, 0, 1, 0, 0))
                    if is_zero(w):
                        return
                yield n, w * (x3 ** n) * Fraction((-2) ** n, factorial(n))

        return OperatorSeries(space, 1, gen, lambda u: _var_degree(u, 2), start=0, name="sigma3",
                              term_eval=term_eval)

    @cached_property
    def t_shape(self) -> MultiDiffOperator:
        return self.read_operator("g54_t_shape")

    @cached_property
    def T(self) -> OperatorSeries:
        space, shape, kappa = self.space, self.t_shape, self.kappa
        x3 = Polynomial.var(space, 2)

        def gen(n):
            c = _t_coefficient(n) * kappa
            terms = {}
            for (alpha,), coef in shape.terms.items():
                a = list(alpha)
                a[2] += n - 2
                terms[(tuple(a),)] = coef * x3 ** (n - 4) * c
            return MultiDiffOperator(space, 1, terms, name=f"T[{n}]")

        def term_eval(top, u):
            w = shape.evaluate(u)
            for n in range(4, top + 1):
                if n == 4:
                    w = derivative(w, (0, 0, 2, 0, 0))
                else:
                    w = derivative(w, (0, 0, 1, 0, 0))
                if is_zero(w):
                    return
                yield n, w * x3 ** (n - 4) * (_t_coefficient(n) * kappa)

        return OperatorSeries(space, 1, gen, lambda u: _var_degree(u, 2) + 2, start=4, name="T",
                              term_eval=term_eval)

    def t_a_form(self, shift_stem="g54_t_aform_shift", local_stem="g54_t_aform_local") -> Evaluator:
        """T assembled from the A-coefficients: sum A_ab (sigma3 - Id) d_ab + sum A_3ab d_3ab."""
        shift = self.read_operator(shift_stem)
        local = self.read_operator(local_stem)
        sig = self.sigma3
        kappa = self.kappa

        def ev(u):
            total = RationalFunction.lift(local.evaluate(u))
            for (alpha,), coef in shift.terms.items():
                du = derivative(u, alpha)
                if is_zero(du):
                    continue
                total = total + coef * (sig.evaluate(du) - du)
            return simplify(total * kappa)

        return Evaluator(1, self.space, ev, name="T(A-form)")

    @cached_property
    def corrected_c2(self) -> Evaluator:
        C2G = GuttCochain(self.algebra, 2)
        dT = hochschild_coboundary(self.T)
        return Evaluator(2, self.space, lambda u, v: C2G.evaluate(u, v) + dT.evaluate(u, v), name="C2")

    def corrected_ladder(self) -> CochainLadder:
        L = self.algebra
        return CochainLadder({0: Multiplication(self.space), 1: PoissonCochain(L), 2: self.corrected_c2},
                             name="corrected(g54)")

    @cached_property
    def t_prime(self) -> MultiDiffOperator:
        return self.read_operator("g54_t_prime").scaled(self.kappa)

    @cached_property
    def c2_kappa(self) -> MultiDiffOperator:
        op = self.c2g_operator + hochschild_coboundary(self.t_prime)
        op.name = "C2kappa"
        return op

    @cached_property
    def c2g_chart(self) -> MultiDiffOperator:
        return self.read_operator("g54_c2g_chart", self.chart.cspace).scaled(self.kappa)

    @cached_property
    def c2g_chart_computed(self) -> MultiDiffOperator:
        """Chart form of C_{2,G} extracted from its x-space operator through pull-back and push-forward."""
        chart, op = self.chart, self.c2g_operator

        def ev(U, V):
            return chart.push(op.evaluate(chart.pull(U), chart.pull(V)))

        F = Evaluator(2, chart.cspace, ev, name="C2G~")
        return extract_operator(F, 2, None, verify_degree=2, name="C2G~")

    @cached_property
    def t_tilde(self) -> OperatorSeries:
        chart, kappa = self.chart, self.kappa
        cs = chart.cspace
        p, q, l1, l3 = 0, 1, 2, 4
        shape = self.read_operator("g54_t_tilde_shape", cs)
        qv = Polynomial.var(cs, q)
        unit = lambda i: tuple(int(j == i) for j in range(len(cs)))
        Y = MultiDiffOperator(cs, 1, {(unit(l3),): qv * Polynomial.var(cs, l1) ** 2, (unit(q),): 1}, name="Y")

        def gen(n):
            op = shape
            for _ in range(n - 2):
                op = Y.compose(op)
            return op.times(qv ** (n - 4) * (_t_coefficient(n) * kappa))

        def term_eval(top, u):
            w = shape.evaluate(u)
            for k in range(top - 1):
                if is_zero(w):
                    return
                n = k + 2
                if n >= 4:
                    yield n, simplify(w * qv ** (n - 4) * (_t_coefficient(n) * kappa))
                w = simplify(Y.evaluate(w))

        def bound(u):
            return _var_degree(u, q) + 2 * _var_degree(u, l3) + 2

        return OperatorSeries(cs, 1, gen, bound, start=4, name="T~", term_eval=term_eval)


def load_fixture(name: str, data_dir=None) -> FixtureBundle:
    if name not in FIXTURE_NAMES:
        raise FixtureError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    base = Path(data_dir) if data_dir is not None else default_data_dir()
    path = base / f"{name}.lie"
    if not path.exists():
        raise FixtureError(f"fixture file {path} not found")
    L = load_algebra(path)
    cls = G54Bundle if name == "g54" else FixtureBundle
    return cls(name, L, base)


def _require_g54(bundle) -> G54Bundle:
    if not isinstance(bundle, G54Bundle):
        raise FixtureError(f"operation defined for g54, not {bundle.name}")
    return bundle


def t_correction(bundle) -> OperatorSeries:
    return _require_g54(bundle).T


def sigma3(bundle) -> OperatorSeries:
    return _require_g54(bundle).sigma3


def corrected_c2(bundle) -> Evaluator:
    return _require_g54(bundle).corrected_c2


def c2_kappa(bundle) -> MultiDiffOperator:
    return _require_g54(bundle).c2_kappa


def chart_form_operators(bundle) -> dict:
    b = _require_g54(bundle)
    return {"C2G_chart": b.c2g_chart, "T_tilde": b.t_tilde}
