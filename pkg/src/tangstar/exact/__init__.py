from .linsolve import LinearSolveResult, SparseSystem, solve_exact
from .parser import ParseError, UnknownVariableError, parse_expression, parse_polynomial
from .polynomial import NEG_INF, Polynomial, VarSpace
from .ratfunc import (
    RationalFunction,
    ZeroDenominatorError,
    divide_exact,
    poly_gcd,
    rf_reduce,
    simplify,
    substitute,
)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.space != b.space:
        raise ValueError(f"varspace mismatch: {a.space!r} vs {b.space!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


__all__ = [
    "LinearSolveResult", "SparseSystem", "solve_exact",
    "ParseError", "UnknownVariableError", "parse_expression", "parse_polynomial",
    "NEG_INF", "Polynomial", "VarSpace", "poly_arith",
    "RationalFunction", "ZeroDenominatorError", "divide_exact", "poly_gcd",
    "rf_reduce", "simplify", "substitute",
]
