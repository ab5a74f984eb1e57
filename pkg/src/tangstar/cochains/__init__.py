"""Multidifferential cochains, charts, verification predicates and the coboundary solver."""
from .base import Cochain, Evaluator, Identity, LinearCombination, Multiplication, compose_unary, is_zero
from .chart import Chart, ChartError, build_chart, chart_push, chart_space, p_degree
from .checks import (
    CheckReport,
    chart_family,
    check_vanishing,
    is_correct,
    is_homogeneous,
    is_tangential,
    localized_evaluate,
    monomial_tuples,
)
from .extract import RepresentationError, extract_operator
from .operators import (
    MultiDiffOperator,
    OperatorFormatError,
    OperatorSeries,
    apply_operator,
    derivative,
    hochschild_coboundary,
    multi_index,
    parse_operator,
    sum_cochains,
    unary,
)
from .solver import (
    CoboundarySolution,
    NotACocycleError,
    random_monomial_tuples,
    solve_coboundary,
    torus_weights,
    verify_coboundary,
)

__all__ = [
    "Cochain", "Evaluator", "Identity", "LinearCombination", "Multiplication", "compose_unary", "is_zero",
    "Chart", "ChartError", "build_chart", "chart_push", "chart_space", "p_degree",
    "CheckReport", "chart_family", "check_vanishing", "is_correct", "is_homogeneous", "is_tangential",
    "localized_evaluate", "monomial_tuples",
    "RepresentationError", "extract_operator",
    "MultiDiffOperator", "OperatorFormatError", "OperatorSeries", "apply_operator", "derivative",
    "hochschild_coboundary", "multi_index", "parse_operator", "sum_cochains", "unary",
    "CoboundarySolution", "NotACocycleError", "random_monomial_tuples", "solve_coboundary",
    "torus_weights", "verify_coboundary",
]
