"""Exact Gaussian elimination over the rationals.

Rows are sparse dicts ``column -> Fraction``.  :class:`SparseSystem` is an
incremental echelon form: rows are reduced against existing pivots as they
arrive, so consistency is known as soon as a contradictory row is added.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


@dataclass
class LinearSolveResult:
    consistent: bool
    particular: list[Fraction] | None
    nullspace: list[list[Fraction]] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "consistent" if self.consistent else "inconsistent"


class SparseSystem:
    """Incremental exact solver for ``A x = b`` with sparse rows."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, tuple[dict, Fraction]] = {}
        self.inconsistent = False
        self.nrows = 0

    def add_row(self, row: dict, rhs=0) -> bool:
        """Add one equation; return False when it contradicts earlier ones."""
        self.nrows += 1
        row = {c: Fraction(v) for c, v in row.items() if v}
        rhs = Fraction(rhs)
        heap = [c for c in row if c in self.pivots]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            c = heapq.heappop(heap)
            f = row.get(c)
            if not f:
                continue
            prow, prhs = self.pivots[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                    if k in self.pivots and k not in seen:
                        seen.add(k)
                        heapq.heappush(heap, k)
                else:
                    row.pop(k, None)
            rhs -= f * prhs
        if not row:
            if rhs:
                self.inconsistent = True
                return False
            return True
        c = min(row)
        inv = 1 / row[c]
        self.pivots[c] = ({k: v * inv for k, v in row.items()}, rhs * inv)
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def free_columns(self):
        return [c for c in range(self.ncols) if c not in self.pivots]

    def _back_substitute(self, values: dict) -> list[Fraction]:
        x = dict(values)
        for c in sorted(self.pivots, reverse=True):
            prow, prhs = self.pivots[c]
            s = prhs
            for k, v in prow.items():
                if k != c:
                    s -= v * x.get(k, 0)
            x[c] = s
        return [x.get(c, Fraction(0)) for c in range(self.ncols)]

    def particular(self) -> list[Fraction] | None:
        if self.inconsistent:
            return None
        return self._back_substitute({})

    def nullspace_vector(self, free_col: int) -> list[Fraction]:
        if free_col in self.pivots:
            raise ValueError(f"column {free_col} is a pivot column")
        # homogeneous system: zero right-hand sides
        saved = self.pivots
        self.pivots = {c: (r, Fraction(0)) for c, (r, _) in saved.items()}
        try:
            return self._back_substitute({free_col: Fraction(1)})
        finally:
            self.pivots = saved

    def nullspace(self) -> list[list[Fraction]]:
        return [self.nullspace_vector(f) for f in self.free_columns()]

    def result(self, with_nullspace=True) -> LinearSolveResult:
        if self.inconsistent:
            return LinearSolveResult(False, None, [])
        return LinearSolveResult(True, self.particular(), self.nullspace() if with_nullspace else [])


def solve_exact(A: Sequence[Sequence], b: Sequence) -> LinearSolveResult:
    """Solve ``A x = b`` exactly; returns a particular solution and a nullspace basis."""
    if len(A) != len(b):
        raise ValueError(f"{len(A)} rows but {len(b)} right-hand sides")
    ncols = len(A[0]) if A else 0
    for r in A:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    system = SparseSystem(ncols)
    for r, rhs in zip(A, b):
        system.add_row({j: v for j, v in enumerate(r) if v}, rhs)
    return system.result()
