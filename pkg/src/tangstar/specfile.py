"""Line-oriented Lie algebra spec files.

    name g54
    dim 5
    bracket [5,4] = x3
    invariant x3^2/2 + x1*x5 - x2*x4
    chart p1 = x4
    inverse x4 = p1

``#`` starts a comment.  Bracket right-hand sides are linear combinations
of the coordinates; chart lines give each chart variable in x and inverse
lines give each x in the chart variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .cochains.chart import build_chart, chart_space
from .exact import ParseError, Polynomial, VarSpace, parse_expression, parse_polynomial
from .lie.algebra import LieAlgebra, validate_lie_algebra


class SpecFileError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


_BRACKET = re.compile(r"^\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(.+)$")
_ASSIGN = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.+)$")


@dataclass
class AlgebraSpec:
    name: str
    dim: int
    brackets: dict = field(default_factory=dict)      # (i, j) 1-based -> {k: c}
    invariants: list = field(default_factory=list)    # expression strings
    chart: dict = field(default_factory=dict)         # chart var -> expression
    inverse: dict = field(default_factory=dict)       # x var -> expression


def parse_spec(text: str) -> AlgebraSpec:
    name, dim = None, None
    brackets, invariants, chart, inverse = {}, [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "name":
            if not rest:
                raise SpecFileError("empty name", lineno)
            name = rest
        elif key == "dim":
            if not rest.isdigit() or int(rest) < 1:
                raise SpecFileError(f"bad dimension {rest!r}", lineno)
            dim = int(rest)
        elif key in ("bracket", "invariant", "chart", "inverse"):
            if dim is None:
                raise SpecFileError(f"'{key}' before 'dim'", lineno)
            space = VarSpace.numbered("x", dim)
            if key == "bracket":
                m = _BRACKET.match(rest)
                if not m:
                    raise SpecFileError(f"expected 'bracket [i,j] = expr', got {rest!r}", lineno)
                i, j = int(m.group(1)), int(m.group(2))
                try:
                    rhs = parse_polynomial(m.group(3), space)
                except ParseError as exc:
                    raise SpecFileError(str(exc), lineno) from None
                if rhs.degree() > 1 or (rhs.terms.get((0,) * dim)):
                    raise SpecFileError("bracket values must be linear in the coordinates", lineno)
                row = {e.index(1) + 1: c for e, c in rhs.terms.items()}
                if (i, j) in brackets:
                    raise SpecFileError(f"bracket [{i},{j}] declared twice", lineno)
                brackets[(i, j)] = row
            elif key == "invariant":
                if not rest:
                    raise SpecFileError("empty invariant", lineno)
                invariants.append(rest)
            else:
                m = _ASSIGN.match(rest)
                if not m:
                    raise SpecFileError(f"expected '{key} var = expr', got {rest!r}", lineno)
                (chart if key == "chart" else inverse)[m.group(1)] = m.group(2).strip()
        else:
            raise SpecFileError(f"unknown directive {key!r}", lineno)
    if name is None or dim is None:
        raise SpecFileError("spec needs 'name' and 'dim'")
    return AlgebraSpec(name, dim, brackets, invariants, chart, inverse)


def build_algebra(spec: AlgebraSpec) -> LieAlgebra:
    """Validate the brackets, parse the invariants, and build and check the chart."""
    L = validate_lie_algebra(spec.dim, spec.brackets, name=spec.name)
    try:
        invs = [parse_polynomial(t, L.space) for t in spec.invariants]
    except ParseError as exc:
        raise SpecFileError(f"invariant: {exc}") from None
    chart = None
    if spec.chart or spec.inverse:
        d = sum(1 for k in spec.chart if k.startswith("p"))
        cspace = chart_space(d, spec.dim - 2 * d)
        try:
            fwd = {k: parse_expression(v, L.space) for k, v in spec.chart.items()}
            inv = {k: parse_expression(v, cspace) for k, v in spec.inverse.items()}
        except ParseError as exc:
            raise SpecFileError(f"chart: {exc}") from None
        chart = build_chart(L.space, fwd, inv, lie=L)
    return L.with_extras(invariants=invs, chart=chart)


def load_algebra(path) -> LieAlgebra:
    return build_algebra(parse_spec(Path(path).read_text(encoding="utf-8")))


def format_spec(L: LieAlgebra, chart_text=None) -> str:
    """Print an algebra in the spec-file format (brackets with i > j)."""
    lines = [f"name {L.name}", f"dim {L.dim}"]
    for (i, j) in sorted(L.brackets, key=lambda t: (-t[0], -t[1])):
        if i > j:
            lines.append(f"bracket [{i + 1},{j + 1}] = {L.bracket_poly(i, j)}")
    for P in L.invariants:
        lines.append(f"invariant {P}")
    if L.chart is not None:
        for name in L.chart.cspace.names:
            lines.append(f"chart {name} = {L.chart.forward[name]}")
        for name in L.space.names:
            lines.append(f"inverse {name} = {L.chart.inverse[name]}")
    return "\n".join(lines) + "\n"
