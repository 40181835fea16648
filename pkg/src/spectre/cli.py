"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 syntax error in the input file,
3 semantic error (unsupported or ill-posed input), 4 internal error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import compile as compile_mod
from . import dsl, epset, pseries, setsys
from .epset import EPSet, format_epset, nat_closure, normalize, params
from .pseries import PSSystem
from .setsys import SetSystem

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SYNTAX = 2
EXIT_SEMANTIC = 3
EXIT_INTERNAL = 4

SEMANTIC_ERRORS = (
    setsys.TrivialEquation,
    setsys.NotReduced,
    setsys.NotBasic,
    setsys.HorizonTooSmall,
    compile_mod.CompileUnsupported,
    pseries.NotElementary,
    pseries.UnsupportedCoefficients,
    pseries.MixedSigns,
    pseries.NotApplicable,
    pseries.CompositionAtNonzeroConstant,
    epset.EmptyOrZeroOnly,
    epset.HypothesisFails,
    ValueError,
)


def _use_color() -> bool:
    if os.environ.get("SPECTRE_COLOR", "") == "0":
        return False
    return sys.stdout.isatty()


def _ok(text: str) -> str:
    return f"\x1b[32m{text}\x1b[0m" if _use_color() else text


def _bad(text: str) -> str:
    return f"\x1b[31m{text}\x1b[0m" if _use_color() else text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        print(f"spectre: cannot read {path}: {e.strerror}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _load(path: str):
    text = _read(path)
    return dsl.parse(text)


def _as_set_system(system, quiet: bool = False, use_hat: bool = True) -> SetSystem:
    """Series systems are translated (after an origin shift if needed)."""
    if isinstance(system, SetSystem):
        return system
    work = system
    if use_hat:
        ok, _ = pseries.is_elementary(system)
        if not ok:
            try:
                work = pseries.hat_transform(system)
                if not quiet:
                    print(
                        "note: removed constant-coefficient linear terms "
                        "by multiplying through with the inverse of "
                        "(I - linear part at the origin); solutions are "
                        "unchanged"
                    )
            except pseries.NotApplicable:
                if not quiet:
                    print(
                        "note: system is not in shift-eligible form; "
                        "reporting the least solution of the direct "
                        "translation"
                    )
    return compile_mod.compile_system(work).system


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    system = _load(args.file)
    if isinstance(system, PSSystem):
        print(f"mode: series  variables: {', '.join(system.variables)}")
        ok, diags = pseries.is_elementary(system)
        if ok:
            print(_ok("elementary: yes"))
        else:
            print(_bad("elementary: no"))
            for d in diags:
                print(f"  {d}")
            system = pseries.hat_transform(system)
            print("(zero-component check uses the origin-shifted system)")
        zeros = pseries.zero_components(system)
        if zeros:
            names = ", ".join(system.variables[i] for i in sorted(zeros))
            print(f"identically zero: {names}")
        else:
            print("identically zero: none")
        return EXIT_OK
    print(f"mode: sets  variables: {', '.join(system.variables)}")
    cls = setsys.classify(system)
    print(f"basic: {'yes' if cls.is_basic else 'no'}")
    print(f"elementary: {'yes' if cls.is_elementary else 'no'}")
    print(f"reduced: {'yes' if cls.is_reduced else 'no'}")
    if cls.empties:
        names = ", ".join(system.variables[i] for i in sorted(cls.empties))
        print(f"empty components: {names}")
    else:
        print("empty components: none")
    return EXIT_OK


def cmd_solve(args) -> int:
    system = _as_set_system(_load(args.file), quiet=args.format == "json")
    sol = setsys.solve(
        system,
        horizon=args.horizon,
        cap=args.enumeration_cap,
        window=args.stabilization_window,
    )
    if args.format == "json":
        doc = setsys.solution_json(sol)
        doc["horizon"] = sol.horizon
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    for v in sol.variables:
        print(f"{v.name} = {format_epset(v.closed_form)}   [{v.certificate}]")
    for note in sol.notes:
        print(f"note: {note}")
    return EXIT_OK


def cmd_params(args) -> int:
    system = _as_set_system(_load(args.file))
    sol = setsys.solve(
        system,
        horizon=args.horizon,
        cap=args.enumeration_cap,
        window=args.stabilization_window,
    )
    print(f"{'var':<8} {'min':>6} {'gcd':>6} {'period':>6} {'onset':>6}")
    for v in sol.variables:
        m = "inf" if v.params.m == math.inf else str(v.params.m)
        print(
            f"{v.name:<8} {m:>6} {v.params.q:>6} "
            f"{v.params.p:>6} {v.params.c:>6}"
        )
    return EXIT_OK


def cmd_coeffs(args) -> int:
    system = _load(args.file)
    if not isinstance(system, PSSystem):
        raise ValueError("coeffs requires a series-mode file")
    ok, _ = pseries.is_elementary(system)
    if not ok:
        system = pseries.hat_transform(system)
        print(
            "note: removed constant-coefficient linear terms by "
            "multiplying through with the inverse of (I - linear part "
            "at the origin); solutions are unchanged"
        )
    sol = pseries.fixed_point_solve(system, args.degree)
    if args.format == "json":
        doc = {
            "degree": args.degree,
            "series": {
                name: [pseries.format_coeff(c) for c in s.coeffs]
                for name, s in zip(system.variables, sol)
            },
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    for name, s in zip(system.variables, sol):
        terms = ", ".join(pseries.format_coeff(c) for c in s.coeffs)
        print(f"{name}: [{terms}]")
    return EXIT_OK


def cmd_digraph(args) -> int:
    system = _as_set_system(_load(args.file), use_hat=False)
    if args.format == "dot":
        print(setsys.digraph_dot(system))
        return EXIT_OK
    dg = setsys.dependency(system)
    names = system.variables
    for i, j in sorted(dg.edges):
        print(f"{names[i]} -> {names[j]}")
    for comp in dg.strong_components():
        members = ", ".join(names[i] for i in sorted(comp))
        print(f"component: {{{members}}}")
    return EXIT_OK


def cmd_compile(args) -> int:
    system = _load(args.file)
    if not isinstance(system, PSSystem):
        raise ValueError("compile requires a series-mode file")
    report = compile_mod.compile_system(system)
    sys.stdout.write(dsl.print_system(report.system))
    for note in report.notes:
        print(f"# {note}")
    for flag in report.flags:
        print(f"# enumerated index set in use: {flag}")
    return EXIT_OK


def cmd_frobenius(args) -> int:
    gens = args.generators
    if any(g <= 0 for g in gens):
        raise ValueError("generators must be positive")
    closure = nat_closure(normalize(gens))
    p = params(closure)
    g = epset.gcd_of(normalize(gens))
    conductor = p.c
    gaps = [n for n in range(conductor) if not epset.member(closure, n)]
    print(f"generators: {', '.join(str(x) for x in sorted(set(gens)))}")
    print(f"gcd: {g}")
    print(f"conductor: {conductor}")
    print(f"gaps: {gaps}")
    print(f"closure: {format_epset(closure)}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--horizon", type=int, default=512)
    p.add_argument("--enumeration-cap", type=int, default=64)
    p.add_argument("--stabilization-window", type=int, default=8)


def build_parser() -> _Parser:
    parser = _Parser(prog="spectre", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify a system")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve the set system")
    p.add_argument("file")
    _add_common(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("params", help="min/gcd/period/onset per variable")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("coeffs", help="series coefficients")
    p.add_argument("file")
    p.add_argument("--degree", type=int, default=32)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("digraph", help="dependency digraph")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.set_defaults(func=cmd_digraph)

    p = sub.add_parser("compile", help="translate a series file to sets")
    p.add_argument("file")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("frobenius", help="numerical closure of generators")
    p.add_argument("generators", type=int, nargs="+")
    p.set_defaults(func=cmd_frobenius)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except dsl.ParseError as e:
        print(f"spectre: syntax error at {e}", file=sys.stderr)
        return EXIT_SYNTAX
    except SEMANTIC_ERRORS as e:
        print(f"spectre: {e}", file=sys.stderr)
        return EXIT_SEMANTIC
    except Exception as e:  # pragma: no cover
        print(f"spectre: internal error: {e!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
