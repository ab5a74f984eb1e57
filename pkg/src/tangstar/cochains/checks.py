"""Finite-grid verification of the grading and tangency predicates.

Every predicate runs over an explicit grid of inputs and returns a
:class:`CheckReport`; a failing report carries the inputs and the nonzero
discrepancy.  The grid bound is stored in the report so that a pass is
always read as "pass up to this degree".
"""
from __future__ import annotations

from dataclasses import dataclass

from ..exact import Polynomial, RationalFunction, simplify
from .base import Cochain, is_zero
from .chart import Chart, p_degree
from .operators import MultiDiffOperator


@dataclass
class CheckReport:
    name: str
    bound: object
    status: str
    witness: dict | None = None
    checked: int = 0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        out = {"id": self.name, "status": self.status, "bound": self.bound, "checked": self.checked}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = {k: _show(v) for k, v in self.witness.items()}
        return out

    def __str__(self):
        line = f"[{self.status.upper()}] {self.name} (bound {self.bound}, {self.checked} cases)"
        if self.detail:
            line += f": {self.detail}"
        if self.witness is not None:
            line += " witness " + ", ".join(f"{k}={_show(v)}" for k, v in self.witness.items())
        return line


def _show(v):
    if isinstance(v, (list, tuple)):
        return [_show(x) for x in v]
    if isinstance(v, (int, str)) or v is None:
        return v
    return str(v)


def passing(name, bound, checked=0, detail="") -> CheckReport:
    return CheckReport(name, bound, "pass", None, checked, detail)


def failing(name, bound, witness, checked=0, detail="") -> CheckReport:
    return CheckReport(name, bound, "fail", witness, checked, detail)


def monomial_tuples(space, arity: int, degree_bound: int, min_slot_degree: int = 0):
    """All tuples of monomials (as polynomials) with total degree <= degree_bound."""
    by_degree = {d: [Polynomial.monomial(space, e) for e in space.monomials(d)]
                 for d in range(degree_bound + 1)}

    def rec(slots, budget):
        if slots == 0:
            yield ()
            return
        for d in range(min_slot_degree, budget + 1):
            for m in by_degree[d]:
                for rest in rec(slots - 1, budget - d):
                    yield (m,) + rest

    yield from rec(arity, degree_bound)


def localized_evaluate(C: Cochain, args):
    """Evaluate on S(g)_I elements.

    Operators act on rational functions directly; any other cochain is
    extended through F(n_1/d_1, ...) = F(n_1, ...) / (d_1 ...), which is the
    unique extension when F commutes with multiplication by the
    denominators.
    """
    if isinstance(C, MultiDiffOperator) or all(isinstance(a, Polynomial) for a in args):
        return simplify(C.evaluate(*args))
    nums, den = [], None
    for a in args:
        a = simplify(a)
        if isinstance(a, RationalFunction):
            nums.append(a.num)
            den = a.den if den is None else den * a.den
        else:
            nums.append(a)
    val = C.evaluate(*nums)
    return simplify(RationalFunction.lift(val) / den) if den is not None else simplify(val)


def is_homogeneous(C: Cochain, n: int, degree_bound: int) -> CheckReport:
    """C(S^{d_1} x ... x S^{d_s}) lies in S^{d_1+...+d_s-n} on all monomial tuples of total degree <= bound."""
    name = f"homogeneous(-{n})" if n >= 0 else f"homogeneous(+{-n})"
    count = 0
    for args in monomial_tuples(C.space, C.arity, degree_bound):
        count += 1
        val = simplify(C.evaluate(*args))
        if is_zero(val):
            continue
        target = sum(a.degree() for a in args) - n
        comps = val.homogeneous_components() if isinstance(val, Polynomial) else None
        if comps is None:
            rf = RationalFunction.lift(val)
            if not (rf.num.is_homogeneous() and rf.den.is_homogeneous()
                    and rf.num.degree() - rf.den.degree() == target):
                return failing(name, degree_bound, {"inputs": args, "value": val, "expected_degree": target}, count)
            continue
        stray = {d: p for d, p in comps.items() if d != target}
        if stray:
            d = min(stray)
            return failing(name, degree_bound,
                           {"inputs": args, "value": val, "expected_degree": target, "stray_component": stray[d]},
                           count)
    return passing(name, degree_bound, count)


def check_vanishing(C: Cochain, degree_bound: int) -> CheckReport:
    """C(..., 1, ...) = 0 in every slot, other slots over monomials of total degree <= bound."""
    one = Polynomial.one(C.space)
    count = 0
    for slot in range(C.arity):
        for rest in monomial_tuples(C.space, C.arity - 1, degree_bound):
            args = rest[:slot] + (one,) + rest[slot:]
            count += 1
            val = simplify(C.evaluate(*args))
            if not is_zero(val):
                return failing("vanishing-on-constants", degree_bound, {"inputs": args, "slot": slot + 1, "value": val}, count)
    return passing("vanishing-on-constants", degree_bound, count)


def is_tangential(L, C: Cochain, degree_bound: int, invariants=None) -> CheckReport:
    """Vanishing on constants, and P*C(u) = C(..., P*u_l, ...) for every declared invariant P.

    The commutation grid uses monomial tuples whose total degree plus deg P
    stays within ``degree_bound``.
    """
    invs = list(invariants if invariants is not None else (L.invariants or []))
    if not invs:
        raise ValueError(f"algebra {L.name!r} declares no invariants")
    rep = check_vanishing(C, degree_bound)
    if not rep.passed:
        rep.name = "tangential"
        rep.detail = "does not vanish on constants"
        return rep
    count = rep.checked
    for P in invs:
        budget = degree_bound - P.degree()
        if budget < 0:
            continue
        for args in monomial_tuples(C.space, C.arity, budget, min_slot_degree=1):
            base = None
            for slot in range(C.arity):
                count += 1
                if base is None:
                    base = simplify(C.evaluate(*args))
                shifted = args[:slot] + (args[slot] * P,) + args[slot + 1:]
                diff = simplify(P * base - C.evaluate(*shifted)) if not is_zero(base) else simplify(-C.evaluate(*shifted))
                if not is_zero(diff):
                    return failing("tangential", degree_bound,
                                   {"invariant": P, "slot": slot + 1, "inputs": args, "discrepancy": diff}, count)
    return passing("tangential", degree_bound, count, detail=f"{len(invs)} invariants")


def chart_family(chart: Chart, arity: int, degree_bound: int):
    """Tuples of chart monomials p^a q^b lambda^c with total degree <= bound, as (chart, pulled-back) pairs."""
    for tup in monomial_tuples(chart.cspace, arity, degree_bound):
        yield tup, tuple(chart.pull(m) for m in tup)


def is_correct(chart: Chart, C: Cochain, n: int, degree_bound: int = 5, family=None) -> CheckReport:
    """||C(u_1, ...)|| <= sum ||u_i|| - n on the pulled-back chart monomial family."""
    name = f"correct(-{n})"
    fam = family if family is not None else chart_family(chart, C.arity, degree_bound)
    count = 0
    for chart_args, xargs in fam:
        count += 1
        val = localized_evaluate(C, xargs)
        if is_zero(val):
            continue
        pushed = chart.push(val)
        got = p_degree(chart, pushed)
        allowed = sum(p_degree(chart, a) for a in chart_args) - n
        if got > allowed:
            return failing(name, degree_bound,
                           {"inputs": chart_args, "value": pushed, "p_degree": got, "allowed": allowed}, count)
    return passing(name, degree_bound, count)
