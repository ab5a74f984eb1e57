"""Lie algebras, the enveloping algebra and star products."""
from .algebra import (
    AntisymmetryError,
    JacobiError,
    JordanHolderError,
    LieAlgebra,
    LieAlgebraError,
    is_invariant,
    jacobi_defect,
    poisson_bracket,
    validate_lie_algebra,
)
from .pbw import EnvelopingAlgebra, PBWElement, graded_decompose, pbw_reduce, symmetrize, uea_mul
from .star import (
    CochainLadder,
    FormalSeries,
    GuttCochain,
    MissingCochainError,
    PoissonCochain,
    associator_defect,
    cocycle_e,
    cocycle_evaluator,
    gauge_transform,
    gutt_cochain,
    gutt_ladder,
    star_truncated,
)

__all__ = [
    "AntisymmetryError", "JacobiError", "JordanHolderError", "LieAlgebra", "LieAlgebraError",
    "is_invariant", "jacobi_defect", "poisson_bracket", "validate_lie_algebra",
    "EnvelopingAlgebra", "PBWElement", "graded_decompose", "pbw_reduce", "symmetrize", "uea_mul",
    "CochainLadder", "FormalSeries", "GuttCochain", "MissingCochainError", "PoissonCochain",
    "associator_defect", "cocycle_e", "cocycle_evaluator", "gauge_transform", "gutt_cochain",
    "gutt_ladder", "star_truncated",
]
