"""Nilpotent Lie algebras given by structure constants in a Jordan-Hölder basis."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..exact import Polynomial, VarSpace


class LieAlgebraError(ValueError):
    """Raised when structure constants violate a Lie algebra axiom.

    ``witness`` holds the offending 1-based index tuple.
    """

    def __init__(self, message, witness):
        self.witness = witness
        super().__init__(f"{message} (witness {witness})")


class AntisymmetryError(LieAlgebraError):
    pass


class JacobiError(LieAlgebraError):
    pass


class JordanHolderError(LieAlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """A validated nilpotent Lie algebra.

    ``brackets[(i, j)]`` maps k to c_ij^k, 0-based, stored for every ordered
    pair with a nonzero bracket (antisymmetric completion included).
    """

    dim: int
    brackets: Mapping[tuple[int, int], Mapping[int, Fraction]]
    name: str = "g"
    invariants: tuple = ()
    chart: object = None
    space: VarSpace = field(default=None)

    def __post_init__(self):
        if self.space is None:
            object.__setattr__(self, "space", VarSpace.numbered("x", self.dim))
        cache = {}
        for (i, j), row in self.brackets.items():
            cache[(i, j)] = Polynomial(self.space, {_unit(self.dim, k): c for k, c in row.items()})
        object.__setattr__(self, "_bracket_polys", cache)
        object.__setattr__(self, "_uea", None)

    def c(self, i, j, k) -> Fraction:
        """Structure constant c_ij^k (0-based)."""
        return self.brackets.get((i, j), {}).get(k, Fraction(0))

    def bracket_poly(self, i, j) -> Polynomial:
        """[X_i, X_j] as a linear function on the dual space."""
        return self._bracket_polys.get((i, j)) or Polynomial.zero(self.space)

    def with_extras(self, invariants=None, chart=None, name=None) -> "LieAlgebra":
        return LieAlgebra(
            self.dim, self.brackets, name or self.name,
            tuple(invariants) if invariants is not None else self.invariants,
            chart if chart is not None else self.chart, self.space,
        )

    @property
    def enveloping(self):
        """The (lazily built, memoizing) enveloping algebra of this Lie algebra."""
        if self._uea is None:
            from .pbw import EnvelopingAlgebra

            object.__setattr__(self, "_uea", EnvelopingAlgebra(self))
        return self._uea

    def __repr__(self):
        return f"LieAlgebra({self.name}, dim={self.dim})"


def _unit(m, k):
    e = [0] * m
    e[k] = 1
    return tuple(e)


def validate_lie_algebra(dim: int, brackets: Mapping, name="g", invariants=(), chart=None) -> LieAlgebra:
    """Build a :class:`LieAlgebra` from declared brackets, checking all axioms.

    ``brackets`` maps 1-based pairs (i, j) to ``{k: c}`` (1-based k) and
    declares [X_i, X_j] = sum c X_k.  The reverse pair is filled in.
    """
    full: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), row in brackets.items():
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise LieAlgebraError("bracket index out of range", (i, j))
        row = {k - 1: Fraction(c) for k, c in row.items() if c}
        for k in row:
            if not 0 <= k < dim:
                raise LieAlgebraError("bracket value index out of range", (i, j, k + 1))
        if i == j:
            if row:
                raise AntisymmetryError("[X_i, X_i] must vanish", (i, i))
            continue
        a, b = i - 1, j - 1
        for key, val in (((a, b), row), ((b, a), {k: -c for k, c in row.items()})):
            if key in full and full[key] != val:
                raise AntisymmetryError("inconsistent declarations of a bracket", (key[0] + 1, key[1] + 1))
            if val:
                full[key] = val
    for (a, b), row in full.items():
        if a >= b:
            for k in row:
                if k >= b:
                    raise JordanHolderError(
                        "bracket [X_i, X_j] with i >= j must lie in span(X_1..X_{j-1})",
                        (a + 1, b + 1, k + 1),
                    )
    c = lambda i, j, k: full.get((i, j), {}).get(k, 0)
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                for r in range(dim):
                    s = sum(
                        c(i, j, l) * c(l, k, r) + c(j, k, l) * c(l, i, r) + c(k, i, l) * c(l, j, r)
                        for l in range(dim)
                    )
                    if s:
                        raise JacobiError("Jacobi identity fails", (i + 1, j + 1, k + 1, r + 1))
    return LieAlgebra(dim, full, name, tuple(invariants), chart)


def poisson_bracket(L: LieAlgebra, u: Polynomial, v: Polynomial):
    """Linear Poisson bracket, normalized so that {x_i, x_j} = [X_i, X_j]."""
    if u.space != L.space or v.space != L.space:
        raise ValueError("arguments must live over the coordinate space of the algebra")
    du = {}
    dv = {}
    total = Polynomial.zero(L.space)
    for (i, j), pij in L._bracket_polys.items():
        if i >= j:
            continue
        if i not in du:
            du[i] = u.diff(i)
        if j not in du:
            du[j] = u.diff(j)
        if i not in dv:
            dv[i] = v.diff(i)
        if j not in dv:
            dv[j] = v.diff(j)
        t = du[i] * dv[j] - du[j] * dv[i]
        if t:
            total = total + pij * t
    return total


def is_invariant(L: LieAlgebra, P: Polynomial):
    """Return ``(True, None)`` when P is Poisson-central, else ``(False, witness)``.

    The witness is ``(i, {x_i, P})`` for the first coordinate with a nonzero
    bracket (1-based i).
    """
    for i in range(L.dim):
        b = poisson_bracket(L, Polynomial.var(L.space, i), P)
        if b:
            return False, (i + 1, b)
    return True, None


def jacobi_defect(L: LieAlgebra, u, v, w):
    return (poisson_bracket(L, u, poisson_bracket(L, v, w))
            + poisson_bracket(L, v, poisson_bracket(L, w, u))
            + poisson_bracket(L, w, poisson_bracket(L, u, v)))
