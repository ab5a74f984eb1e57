"""Exact solver for delta(C) = E over a finite multidifferential ansatz.

Unknowns are the coefficients of terms ``x^gamma d^{alpha_1} (x) ... (x) d^{alpha_s}``
with total order |alpha| = |gamma| + n, so every term is homogeneous of
degree -n.  Such a term sends monomials to a multiple of a single monomial:
on (x^{a_1}, ..., x^{a_s}) it produces x^{a_1+...+a_s-D} with
D = alpha_1 + ... + alpha_s - gamma.  The coboundary preserves this, so the
equations delta(C) = E split into independent blocks indexed by D; only the
tangency constraints (a sum over the monomials of an invariant) can tie
blocks together, and those are merged with a union-find.

When the algebra carries a torus of diagonal automorphisms (a grading
w(x_k) = w(x_i) + w(x_j) whenever [X_i, X_j] has an X_k component) and E
respects it, only weight-preserving terms are kept.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

from ..exact import Polynomial, RationalFunction, SparseSystem, divide_exact, poly_gcd, simplify, solve_exact
from .base import Cochain, is_zero
from .checks import CheckReport, failing, monomial_tuples, passing
from .operators import MultiDiffOperator, hochschild_coboundary

CONSTRAINTS = ("skew", "parity", "homogeneous", "vanishing", "tangential", "correct")


class NotACocycleError(ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


@dataclass
class CoboundarySolution:
    status: str
    operator: MultiDiffOperator | None
    nullity: int = 0
    nullspace: list = field(default_factory=list)
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.status == "solved"


# -- gradings ---------------------------------------------------------------

def torus_weights(L) -> list[list[Fraction]]:
    """Basis of the gradings of the Lie algebra: vectors w with w_k = w_i + w_j on every bracket."""
    m = L.dim
    rows, rhs = [], []
    for (i, j), out in L.brackets.items():
        if i >= j:
            continue
        for k, c in out.items():
            if c:
                row = [0] * m
                row[k] += 1
                row[i] -= 1
                row[j] -= 1
                rows.append(row)
                rhs.append(0)
    if not rows:
        return [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    return solve_exact(rows, rhs).nullspace


def _weight(W, e):
    return tuple(sum(w[i] * k for i, k in enumerate(e) if k) for w in W)


# -- ansatz ------------------------------------------------------------------

def _ff(p, alpha):
    """d^alpha x^p = ff(p, alpha) x^(p - alpha)."""
    c = 1
    for a, b in zip(p, alpha):
        if b:
            if b > a:
                return 0
            c *= factorial(a) // factorial(a - b)
    return c


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class _Var:
    terms: list          # [(alphas, gamma, factor)]
    D: tuple


def build_ansatz(space, arity, n, order_bound, degree_bound, *, vanishing=True, parity=None, weights=None):
    """Unknowns of the homogeneous -n ansatz, grouped for parity."""
    min_order = 1 if vanishing else 0
    m = len(space)
    mons = {d: list(space.monomials(d)) for d in range(order_bound + 1)}
    gam_by = {}
    variables: list[_Var] = []
    seen = set()
    top = min(arity * order_bound, degree_bound)
    for k in range(max(n, arity * min_order), top + 1):
        gdeg = k - n
        if gdeg not in gam_by:
            table: dict = {}
            for g in space.monomials(gdeg):
                table.setdefault(_weight(weights, g) if weights else None, []).append(g)
            gam_by[gdeg] = table
        for orders in product(range(min_order, order_bound + 1), repeat=arity):
            if sum(orders) != k:
                continue
            for alphas in product(*(mons[o] for o in orders)):
                total = tuple(map(sum, zip(*alphas)))
                key = _weight(weights, total) if weights else None
                for g in gam_by[gdeg].get(key, []):
                    if (alphas, g) in seen:
                        continue
                    seen.add((alphas, g))
                    terms = [(alphas, g, 1)]
                    if parity is not None:
                        swapped = alphas[::-1]
                        if swapped == alphas:
                            if parity == -1:
                                continue
                        else:
                            seen.add((swapped, g))
                            terms.append((swapped, g, parity))
                    variables.append(_Var(terms, _sub(total, g)))
    return variables


def ansatz_operator(space, arity, variables, values, name="C") -> MultiDiffOperator:
    terms: dict = {}
    for var, val in zip(variables, values):
        if not val:
            continue
        for alphas, g, f in var.terms:
            coef = Polynomial.monomial(space, g, val * f)
            terms[alphas] = terms[alphas] + coef if alphas in terms else coef
    return MultiDiffOperator(space, arity, terms, name=name)


# -- union-find ----------------------------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


# -- main entry ------------------------------------------------------------------

def _coboundary_row_coef(var, A, s):
    """Coefficient of the single output monomial of delta(var) on the monomial tuple A."""
    total = 0
    for alphas, _g, f in var.terms:
        v = 1
        for l in range(s):
            v *= _ff(A[l + 1], alphas[l])
            if not v:
                break
        acc = v
        for k in range(1, s + 1):
            merged = A[:k - 1] + (_add(A[k - 1], A[k]),) + A[k + 1:]
            v = 1
            for l in range(s):
                v *= _ff(merged[l], alphas[l])
                if not v:
                    break
            acc += v if k % 2 == 0 else -v
        v = 1
        for l in range(s):
            v *= _ff(A[l], alphas[l])
            if not v:
                break
        acc += v if (s + 1) % 2 == 0 else -v
        total += f * acc
    return total


def check_cocycle(E: Cochain, samples: int = 6, degree: int = 4, seed: int = 0):
    """delta(E) = 0 on a few random monomial tuples; raises NotACocycleError otherwise."""
    dE = hochschild_coboundary(E)
    for args in random_monomial_tuples(E.space, E.arity + 1, 1, degree, samples, seed):
        val = simplify(dE.evaluate(*args))
        if not is_zero(val):
            raise NotACocycleError(f"delta(E) = {val} on {[str(a) for a in args]}",
                                   {"inputs": args, "value": val})


def solve_coboundary(L, E: Cochain, n: int, order_bound: int, degree_bound: int, constraints=(),
                     *, invariants=None, chart=None, correct_degree=3, graded=True,
                     with_nullspace=False, cocycle_samples=6) -> CoboundarySolution:
    """Find C with delta(C) = E within the ansatz, subject to linear constraints.

    ``constraints`` is a subset of {"skew" (alias "parity"), "homogeneous",
    "vanishing", "tangential", "correct"}.  Homogeneity -n is built into the
    ansatz.  "skew" imposes C(u, v) = (-1)^n C(v, u).  The training grid is
    every monomial tuple with total degree <= degree_bound; terms of total
    order above degree_bound are invisible on it and are not included.
    """
    constraints = set(constraints)
    unknown = constraints - set(CONSTRAINTS)
    if unknown:
        raise ValueError(f"unknown constraints {sorted(unknown)}")
    space = E.space
    s = E.arity - 1
    if s < 1:
        raise ValueError("E must have arity at least 2")
    if cocycle_samples:
        check_cocycle(E, cocycle_samples)
    parity = None
    if constraints & {"skew", "parity"}:
        if s != 2:
            raise ValueError("the parity constraint applies to bilinear cochains")
        parity = -1 if n % 2 else 1
    vanishing = "vanishing" in constraints or "tangential" in constraints
    min_slot = 1 if vanishing else 0

    # evaluate E on the training grid first, so the grading can be confirmed
    grid = []
    for args in monomial_tuples(space, s + 1, degree_bound, min_slot_degree=min_slot):
        A = tuple(next(iter(a.terms)) for a in args)
        val = simplify(E.evaluate(*args))
        if isinstance(val, RationalFunction):
            raise ValueError("E must be polynomial on polynomial inputs")
        grid.append((A, dict(val.terms)))
    weights = torus_weights(L) if graded else None
    if weights:
        for A, vals in grid:
            w_in = _weight(weights, tuple(map(sum, zip(*A))))
            if any(_weight(weights, e) != w_in for e in vals):
                weights = None
                break

    variables = build_ansatz(space, s, n, order_bound, degree_bound,
                             vanishing=vanishing, parity=parity, weights=weights)
    blocks: dict = {}
    for idx, var in enumerate(variables):
        blocks.setdefault(var.D, []).append(idx)
    stats = {"unknowns": len(variables), "blocks": len(blocks), "grid": len(grid),
             "graded": bool(weights), "constraints": sorted(constraints)}

    rows: dict = {D: [] for D in blocks}
    cross_rows = []
    witness = None
    for A, vals in grid:
        total = tuple(map(sum, zip(*A)))
        for D, idxs in blocks.items():
            M = _sub(total, D)
            if min(M) < 0:
                continue
            row = {}
            for i in idxs:
                c = _coboundary_row_coef(variables[i], A, s)
                if c:
                    row[i] = c
            rhs = vals.pop(M, 0)
            if row or rhs:
                rows[D].append((row, rhs))
        for M, c in vals.items():
            if c and witness is None:
                witness = {"inputs": [Polynomial.monomial(space, a) for a in A],
                           "unreachable_monomial": Polynomial.monomial(space, M, c)}
    if witness is not None:
        stats["rows"] = sum(len(r) for r in rows.values())
        return CoboundarySolution("infeasible", None, witness=witness, stats=stats)

    if "tangential" in constraints:
        invs = list(invariants if invariants is not None else (L.invariants or []))
        if not invs:
            raise ValueError("tangential constraint needs declared invariants")
        for P in invs:
            budget = degree_bound - P.degree()
            if budget < 0:
                continue
            pterms = list(P.terms.items())
            for args in monomial_tuples(space, s, budget, min_slot_degree=min_slot):
                A = tuple(next(iter(a.terms)) for a in args)
                total = tuple(map(sum, zip(*A)))
                for slot in range(s):
                    by_out: dict = {}
                    for i, var in enumerate(variables):
                        for alphas, _g, f in var.terms:
                            base = 1
                            for l in range(s):
                                base *= _ff(A[l], alphas[l])
                                if not base:
                                    break
                            for mexp, c in pterms:
                                shifted = 1
                                for l in range(s):
                                    shifted *= _ff(_add(A[l], mexp) if l == slot else A[l], alphas[l])
                                    if not shifted:
                                        break
                                v = c * f * (base - shifted)
                                if v:
                                    out = _sub(_add(total, mexp), var.D)
                                    row = by_out.setdefault(out, {})
                                    row[i] = row.get(i, 0) + v
                    for row in by_out.values():
                        row = {i: v for i, v in row.items() if v}
                        if row:
                            cross_rows.append((row, 0))

    if "correct" in constraints:
        if chart is None:
            raise ValueError("correct constraint needs a chart")
        cross_rows.extend(_correctness_rows(chart, space, s, n, variables, correct_degree))

    uf = _UnionFind()
    for D in blocks:
        uf.find(D)
    for row, _ in cross_rows:
        Ds = [variables[i].D for i in row]
        for D in Ds[1:]:
            uf.union(Ds[0], D)
    components: dict = {}
    for D in sorted(blocks):
        components.setdefault(uf.find(D), []).append(D)
    comp_rows: dict = {root: [] for root in components}
    for D, rs in rows.items():
        comp_rows[uf.find(D)].extend(rs)
    for row, rhs in cross_rows:
        comp_rows[uf.find(variables[next(iter(row))].D)].append((row, rhs))

    values = [Fraction(0)] * len(variables)
    null_vectors = []
    nullity = 0
    nrows = 0
    for root in sorted(components):
        idxs = [i for D in components[root] for i in blocks[D]]
        local = {g: k for k, g in enumerate(idxs)}
        system = SparseSystem(len(idxs))
        for row, rhs in comp_rows[root]:
            nrows += 1
            if not system.add_row({local[i]: v for i, v in row.items()}, rhs):
                stats["rows"] = nrows
                return CoboundarySolution(
                    "infeasible", None,
                    witness={"block": root, "reason": "inconsistent linear conditions"}, stats=stats)
        part = system.particular()
        for k, v in enumerate(part):
            values[idxs[k]] = v
        free = system.free_columns()
        nullity += len(free)
        if with_nullspace:
            for col in free:
                vec = system.nullspace_vector(col)
                full = [Fraction(0)] * len(variables)
                for k, v in enumerate(vec):
                    full[idxs[k]] = v
                null_vectors.append(full)
    stats["rows"] = nrows
    stats["components"] = len(components)
    op = ansatz_operator(space, s, variables, values, name=f"C{n}")
    basis = [ansatz_operator(space, s, variables, vec, name=f"N{k}") for k, vec in enumerate(null_vectors)]
    return CoboundarySolution("solved", op, nullity, basis, stats=stats)


def _correctness_rows(chart, space, s, n, variables, degree):
    """Linear conditions: p-degree of each term's output on the chart family stays within the bound."""
    from .chart import p_degree

    out_rows = []
    pidx = chart.p_indices
    for tup in monomial_tuples(chart.cspace, s, degree, min_slot_degree=1):
        xargs = tuple(chart.pull(m) for m in tup)
        allowed = sum(p_degree(chart, m) for m in tup) - n
        pushed = []
        for var in variables:
            op = ansatz_operator(space, s, [var], [Fraction(1)])
            val = simplify(op.evaluate(*xargs))
            pushed.append(None if is_zero(val) else RationalFunction.lift(chart.push(val)))
        den = None
        for v in pushed:
            if v is not None:
                den = v.den if den is None else divide_exact(den * v.den, poly_gcd(den, v.den))
        if den is None:
            continue
        by_mon: dict = {}
        for i, v in enumerate(pushed):
            if v is None:
                continue
            num = v.num * divide_exact(den, v.den)
            for e, c in num.terms.items():
                if sum(e[j] for j in pidx) > allowed:
                    by_mon.setdefault(e, {})[i] = c
        out_rows.extend((row, 0) for row in by_mon.values())
    return out_rows


# -- verification ------------------------------------------------------------------

def random_monomial_tuples(space, arity, lo, hi, count, seed=0, min_slot_degree=1):
    """Deterministic sample of monomial tuples with total degree in [lo, hi]."""
    rng = random.Random(seed)
    m = len(space)
    out = []
    lo = max(lo, arity * min_slot_degree)
    for _ in range(count):
        t = rng.randint(lo, hi)
        cuts = sorted(rng.randint(0, t - arity * min_slot_degree) for _ in range(arity - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [t - arity * min_slot_degree])]
        tup = []
        for p in parts:
            d = p + min_slot_degree
            e = [0] * m
            for _ in range(d):
                e[rng.randrange(m)] += 1
            tup.append(Polynomial.monomial(space, tuple(e)))
        out.append(tuple(tup))
    return out


def verify_coboundary(C: Cochain, E: Cochain, degree: int, *, lo=None, sample=None, seed=0,
                      min_slot_degree=1) -> CheckReport:
    """delta(C) = E on monomial tuples of total degree in [lo, degree] (all, or a seeded sample)."""
    dC = hochschild_coboundary(C)
    lo = degree if lo is None else lo
    if sample is None:
        tuples = (t for t in monomial_tuples(E.space, E.arity, degree, min_slot_degree)
                  if sum(a.degree() for a in t) >= lo)
    else:
        tuples = random_monomial_tuples(E.space, E.arity, lo, degree, sample, seed, min_slot_degree)
    count = 0
    for args in tuples:
        count += 1
        diff = simplify(dC.evaluate(*args) - E.evaluate(*args))
        if not is_zero(diff):
            return failing("coboundary", degree, {"inputs": args, "discrepancy": diff}, count)
    return passing("coboundary", degree, count)
