"""Generic charts (p, q, lambda) on the dual of a nilpotent Lie algebra."""
from __future__ import annotations

from dataclasses import dataclass

from ..exact import NEG_INF, Polynomial, RationalFunction, VarSpace, simplify, substitute


class ChartError(ValueError):
    pass


def chart_space(d: int, n_lambda: int) -> VarSpace:
    return VarSpace(
        [f"p{i}" for i in range(1, d + 1)]
        + [f"q{i}" for i in range(1, d + 1)]
        + [f"lambda{i}" for i in range(1, n_lambda + 1)]
    )


@dataclass(frozen=True, eq=False)
class Chart:
    """Rational coordinate change between x-space and (p, q, lambda)-space.

    ``forward`` maps each chart variable name to a function of x;
    ``inverse`` maps each x variable name to a function of the chart
    variables.
    """

    xspace: VarSpace
    cspace: VarSpace
    d: int
    forward: dict
    inverse: dict

    @property
    def p_indices(self):
        return list(range(self.d))

    @property
    def q_indices(self):
        return list(range(self.d, 2 * self.d))

    @property
    def lambda_indices(self):
        return list(range(2 * self.d, len(self.cspace)))

    def lambda_polys(self):
        return [self.forward[self.cspace.names[i]] for i in self.lambda_indices]

    def pull(self, f):
        """Express a chart-space function in x."""
        return simplify(substitute(f, self.forward, self.xspace))

    def push(self, u):
        return chart_push(self, u)


def build_chart(xspace: VarSpace, forward: dict, inverse: dict, lie=None) -> Chart:
    """Validate round trips (and centrality of the lambdas when ``lie`` is given)."""
    names = list(forward)
    d = sum(1 for n in names if n.startswith("p"))
    n_lambda = len(xspace) - 2 * d
    cspace = chart_space(d, n_lambda)
    if set(names) != set(cspace.names):
        raise ChartError(f"chart variables {sorted(names)} do not match {list(cspace.names)}")
    if set(inverse) != set(xspace.names):
        raise ChartError("the inverse map must express every coordinate")
    fwd = {n: simplify(RationalFunction.lift(f, xspace)) for n, f in forward.items()}
    inv = {n: simplify(RationalFunction.lift(f, cspace)) for n, f in inverse.items()}
    for name, f in fwd.items():
        back = substitute(f, inv, cspace)
        if back != RationalFunction.lift(Polynomial.var(cspace, name)):
            raise ChartError(f"round trip fails for {name}: got {back}")
    for name, g in inv.items():
        back = substitute(g, fwd, xspace)
        if back != RationalFunction.lift(Polynomial.var(xspace, name)):
            raise ChartError(f"round trip fails for {name}: got {back}")
    chart = Chart(xspace, cspace, d, fwd, inv)
    if lie is not None:
        from ..lie.algebra import is_invariant

        for lam in chart.lambda_polys():
            if not isinstance(lam, Polynomial):
                raise ChartError(f"generic invariant {lam} must be a polynomial")
            ok, witness = is_invariant(lie, lam)
            if not ok:
                raise ChartError(f"generic invariant {lam} is not central: {witness}")
    return chart


def chart_push(chart: Chart, u) -> RationalFunction:
    """Rewrite a function of x in the chart variables."""
    if isinstance(u, (Polynomial, RationalFunction)) and u.space != chart.xspace:
        raise ChartError("chart_push expects a function over the x coordinates")
    return substitute(u, chart.inverse, chart.cspace)


def p_degree(chart: Chart, u):
    """Degree in the p variables of u written in the chart; -inf for zero."""
    v = u if (isinstance(u, (Polynomial, RationalFunction)) and u.space == chart.cspace) else chart_push(chart, u)
    v = RationalFunction.lift(v)
    if v.is_zero():
        return NEG_INF
    if v.den.degree_in(chart.p_indices) > 0:
        raise ChartError(f"{v} is not polynomial in p")
    return v.num.degree_in(chart.p_indices)
