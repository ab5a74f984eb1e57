"""Command line interface.

Exit codes: 0 success, 1 a verification failed (a witness is printed),
2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cochains import NotACocycleError
from .cochains.solver import CONSTRAINTS
from .exact import ParseError, parse_polynomial
from .fixtures import FIXTURE_NAMES, FixtureError, default_data_dir, load_fixture
from .lie import LieAlgebraError, gutt_ladder, is_invariant, poisson_bracket, star_truncated
from .specfile import SpecFileError, format_spec, load_algebra
from .suites import SUITES, emit_report, run_suite, solve_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# the Gutt cochains are not tangential, so only the corrected ladder asks for it
DEFAULT_CONSTRAINTS = {
    "corrected": "skew,homogeneous,vanishing,tangential",
    "gutt": "skew,homogeneous,vanishing",
}


class InputError(Exception):
    pass


def _resolve(spec: str, fixtures_dir):
    """Load an algebra from a path, or from the fixture directory by name ("g54" or "g54.lie")."""
    path = Path(spec)
    base = Path(fixtures_dir) if fixtures_dir else default_data_dir()
    stem = path.name[:-4] if path.name.endswith(".lie") else path.name
    if not path.exists() and stem in FIXTURE_NAMES and (base / f"{stem}.lie").exists():
        return load_fixture(stem, base)
    if not path.exists():
        raise InputError(f"no such spec file: {spec}")
    L = load_algebra(path)
    if L.name in FIXTURE_NAMES and path.resolve().parent == base.resolve():
        return load_fixture(L.name, base)
    return _Plain(L)


class _Plain:
    """An algebra without fixture operators."""

    def __init__(self, L):
        self.algebra = L
        self.name = None


def _poly(text, L, flag):
    try:
        return parse_polynomial(text, L.space)
    except ParseError as exc:
        raise InputError(f"{flag}: {exc}") from None


def _bundle(obj):
    return obj if obj.name is not None else None


def cmd_validate(args, obj):
    L = obj.algebra
    if args.format == "json":
        out = {"name": L.name, "dim": L.dim, "invariants": [str(P) for P in L.invariants],
               "chart": L.chart is not None, "status": "pass"}
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"valid: {L.name} (dim {L.dim}, {len(L.invariants)} invariants"
              f"{', chart' if L.chart is not None else ''})")
        if args.show:
            print(format_spec(L), end="")
    return EXIT_OK


def cmd_bracket(args, obj):
    L = obj.algebra
    u, v = _poly(args.u, L, "-u"), _poly(args.v, L, "-v")
    val = poisson_bracket(L, u, v)
    if args.format == "json":
        print(json.dumps({"u": str(u), "v": str(v), "bracket": str(val)}, sort_keys=True))
    else:
        print(val)
    return EXIT_OK


def cmd_star(args, obj):
    L = obj.algebra
    u, v = _poly(args.u, L, "-u"), _poly(args.v, L, "-v")
    if args.order < 0:
        raise InputError("--order must be non-negative")
    if args.product == "corrected":
        b = _bundle(obj)
        if b is None or b.name != "g54":
            raise InputError("the corrected product is available for the g54 fixture only")
        if args.order > 2:
            raise InputError("the corrected product is known through order 2; use solve-cn for order 3")
        ladder = b.corrected_ladder()
    else:
        ladder = gutt_ladder(L, args.order)
    series = star_truncated(ladder, u, v, args.order)
    if args.format == "json":
        print(json.dumps({"u": str(u), "v": str(v), "product": args.product,
                          "coefficients": [str(c) for c in series.coefficients]}, indent=2, sort_keys=True))
    else:
        print(series)
    return EXIT_OK


def cmd_invariant_check(args, obj):
    L = obj.algebra
    polys = [_poly(e, L, "--expr") for e in args.expr] if args.expr else list(L.invariants)
    if not polys:
        raise InputError(f"{L.name} declares no invariants; pass --expr")
    results, status = [], "pass"
    for P in polys:
        ok, w = is_invariant(L, P)
        entry = {"id": str(P), "status": "pass" if ok else "fail"}
        if not ok:
            status = "fail"
            entry["witness"] = {"coordinate": f"x{w[0]}", "bracket": str(w[1])}
        results.append(entry)
    if args.format == "json":
        print(json.dumps({"algebra": L.name, "checks": results, "status": status}, indent=2, sort_keys=True))
    else:
        for r in results:
            line = f"[{r['status'].upper()}] {r['id']}"
            if "witness" in r:
                line += f" witness {{{r['witness']['coordinate']}, P}} = {r['witness']['bracket']}"
            print(line)
        print(f"status: {status}")
    return EXIT_OK if status == "pass" else EXIT_FAIL


def cmd_verify(args, obj):
    if args.degree is not None and args.degree < 0:
        raise InputError("--degree must be non-negative")
    rep = run_suite(args.suite, obj.algebra, _bundle(obj), args.degree, args.seed, args.sample)
    print(emit_report(rep, args.format, args.timings))
    return EXIT_OK if rep.status == "pass" else EXIT_FAIL


def cmd_solve_cn(args, obj):
    L = obj.algebra
    if args.n < 2:
        raise InputError("--n must be at least 2")
    b = _bundle(obj)
    ladder = args.ladder or ("corrected" if b is not None and b.name == "g54" and args.n == 3 else "gutt")
    if args.constraints is None:
        args.constraints = DEFAULT_CONSTRAINTS[ladder]
    constraints = [c for c in args.constraints.split(",") if c]
    bad = [c for c in constraints if c not in CONSTRAINTS]
    if bad:
        raise InputError(f"unknown constraints {bad}; known: {', '.join(CONSTRAINTS)}")
    if ladder == "corrected" and (b is None or b.name != "g54" or args.n != 3):
        raise InputError("the corrected ladder supports --n 3 on g54 only")
    target = b if ladder == "corrected" else L
    degree = args.degree
    order_bound = args.order_bound if args.order_bound is not None else degree
    rep = solve_report(target, args.n, order_bound, degree, constraints, args.seed, args.sample, ladder=ladder)
    rep.config["ladder"] = ladder
    print(emit_report(rep, args.format, args.timings))
    if args.print_operator and rep.solution.feasible:
        print(rep.solution.operator.to_text())
    return EXIT_OK if rep.status == "pass" else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--fixtures-dir", default=None, help="directory holding the fixture files")

    p = argparse.ArgumentParser(prog="tangstar", description="Exact star products on duals of nilpotent Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check antisymmetry, Jacobi and the chart")
    s.add_argument("spec")
    s.add_argument("--show", action="store_true", help="print the normalized spec")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("bracket", parents=[common], help="linear Poisson bracket {u, v}")
    s.add_argument("spec")
    s.add_argument("-u", required=True)
    s.add_argument("-v", required=True)
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("star", parents=[common], help="truncated star product")
    s.add_argument("spec")
    s.add_argument("-u", required=True)
    s.add_argument("-v", required=True)
    s.add_argument("--order", type=int, default=2)
    s.add_argument("--product", choices=("gutt", "corrected"), default="gutt")
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("invariant-check", parents=[common], help="check that polynomials are Poisson-central")
    s.add_argument("spec")
    s.add_argument("--expr", action="append", help="polynomial to check (repeatable); default: declared invariants")
    s.set_defaults(func=cmd_invariant_check)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("spec")
    s.add_argument("--suite", choices=SUITES + ("all",), default="all")
    s.add_argument("--degree", type=int, default=None)
    s.add_argument("--sample", type=int, default=100, help="out-of-sample draws")
    s.add_argument("--timings", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve-cn", parents=[common], help="solve delta(C_n) = E_n on a finite ansatz")
    s.add_argument("spec")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--order-bound", type=int, default=None)
    s.add_argument("--degree", type=int, default=4)
    s.add_argument("--constraints", default=None,
                   help="comma-separated subset of " + ",".join(CONSTRAINTS) + " (default depends on the ladder)")
    s.add_argument("--ladder", choices=("gutt", "corrected"), default=None)
    s.add_argument("--sample", type=int, default=200, help="out-of-sample draws")
    s.add_argument("--timings", action="store_true")
    s.add_argument("--print-operator", action="store_true")
    s.set_defaults(func=cmd_solve_cn)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        obj = _resolve(args.spec, args.fixtures_dir)
        return args.func(args, obj)
    except (InputError, SpecFileError, ParseError, LieAlgebraError, FixtureError, NotACocycleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"witness: {witness}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
