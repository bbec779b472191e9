"""Command line interface.

Exit codes: 0 verified / constructed, 1 verification or constraint failure,
2 input error (bad file, parse error, violated hypothesis).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .audit import FIXTURES, MODES, audit_example
from .config import format_params, parse_equation_config, parse_params
from .equation import Branch, verify, verify_symbolic
from .errors import ConfigError, ParseError, TrinomialError, ValidationError
from .fuzz import ALL_CASES, run_fuzz
from .parser import format_expression, parse_expression
from .solutions import CASES, CaseParameters, check_constraints, construct, derive_params, solve_xi

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _equation(args):
    return parse_equation_config(_read(args.equation))


def _params(args, eq) -> CaseParameters:
    text = _read(args.params) if getattr(args, "params", None) else ""
    p = parse_params(text, eq, args.theorem, args.case)
    if getattr(args, "branch", None):
        p = p.with_(branch=Branch(args.branch))
    return p


def _emit(args, payload: dict, text: str):
    if args.output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------- commands

def cmd_verify(args) -> int:
    eq = _equation(args)
    src = args.solution
    text = _read(src).strip() if os.path.isfile(src) else src
    f = parse_expression(text, eq.n)
    if args.numeric:
        report = verify(eq, f, samples=args.samples, seed=args.seed, tol=args.tol)
        ok = report.passed
        payload = report.as_dict()
        line = (f"symbolic_zero={report.symbolic_zero} "
                f"max_rel_residual={report.numeric_max_rel_residual:.3e} "
                f"samples={report.samples} seed={report.seed}")
        if report.overflow_excluded:
            line += f" overflow_excluded={report.overflow_excluded}"
    else:
        ok = verify_symbolic(eq, f)
        payload = {"symbolic_zero": ok}
        line = f"symbolic_zero={ok}"
    payload["passed"] = ok
    _emit(args, payload, f"{'PASS' if ok else 'FAIL'} {line}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_construct(args) -> int:
    eq = _equation(args)
    params = _params(args, eq)
    if args.solve_xi:
        # re-solve from the equation; given L1 stays as the hint for the split
        params = derive_params(eq, params.theorem, params.case, xi_index=args.xi_index,
                               log_branch=args.log_branch, hint_L1=params.L1,
                               base=params.with_(xi=None, L2=None))
    else:
        params = derive_params(eq, params.theorem, params.case, base=params)
    cand, report = construct(eq, params)
    ok = report.satisfied
    payload = {"f": format_expression(cand.f), "constraints": report.as_list(),
               "satisfied": ok, "params": format_params(params)}
    text = (f"f = {format_expression(cand.f)}\nconstraints "
            f"({'satisfied' if ok else 'NOT satisfied'}):\n{report.format()}")
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_solve_params(args) -> int:
    eq = _equation(args)
    params = _params(args, eq)
    if (params.theorem, params.case) in (("2.1", "ii"), ("2.2", "iii")):
        L = params.L or tuple(eq.g.linear_part())
        roots = solve_xi(eq, params.theorem, L, params.branch)
        payload = {"xi": [str(r) for r in roots]}
        lines = [f"xi = {r}" for r in roots]
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK
    derived = derive_params(eq, params.theorem, params.case, log_branch=args.log_branch,
                            base=params)
    _emit(args, {"params": format_params(derived)}, format_params(derived).rstrip())
    return EXIT_OK


def cmd_check_constraints(args) -> int:
    eq = _equation(args)
    params = _params(args, eq)
    report = check_constraints(eq, params)
    ok = report.satisfied
    _emit(args, {"constraints": report.as_list(), "satisfied": ok},
          f"constraints {'satisfied' if ok else 'NOT satisfied'}:\n{report.format()}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_examples(args) -> int:
    ids = [args.id] if args.id else list(FIXTURES)
    modes = [args.mode] if args.mode else list(MODES)
    gate = modes if args.mode else ["constructed"]
    ok = True
    records = []
    for ex in ids:
        for mode in modes:
            outcome = audit_example(ex, mode)
            for r in outcome.results:
                records.append(r)
                if mode in gate and not r.passed:
                    ok = False
    if args.output == "json":
        for r in records:
            print(json.dumps(r.as_dict(), sort_keys=True))
    else:
        print("\n\n".join(r.format() for r in records))
        print(f"\noverall ({'/'.join(gate)} mode): {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fuzz(args) -> int:
    cases = [c for c in ALL_CASES
             if (not args.theorem or c[0] == args.theorem) and (not args.case or c[1] == args.case)]
    if not cases:
        raise InputError("no case matches the --theorem/--case filter")
    result = run_fuzz(args.trials, args.seed, cases, samples=args.samples)
    bad = result.violations
    if args.output == "json":
        for t in result.trials:
            print(json.dumps({"theorem": t.theorem, "case": t.case, "trial": t.index,
                              "symbolic_zero": t.symbolic, "max_rel_residual": t.max_rel_residual,
                              "constraints_satisfied": t.constraints_ok, "ok": t.ok},
                             sort_keys=True))
    else:
        for theorem, case in cases:
            rows = [t for t in result.trials if (t.theorem, t.case) == (theorem, case)]
            worst = max(t.max_rel_residual for t in rows)
            nbad = sum(not t.ok for t in rows)
            print(f"{theorem}({case}): {len(rows)} trials, {nbad} violations, "
                  f"worst rel residual {worst:.3e}")
        for t in bad:
            print(f"VIOLATION {t.theorem}({t.case}) trial {t.index} seed {args.seed}: {t.detail}")
    return EXIT_OK if not bad else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trinomial-pdde",
        description="Construct and verify solutions of a D(f)^2 + 2w D(f) S(f) + b S(f)^2 = e^g.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--output", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    def case_args(p, required=True):
        p.add_argument("--equation", required=True, help="equation config file")
        p.add_argument("--theorem", choices=sorted(CASES), required=required)
        p.add_argument("--case", choices=("i", "ii", "iii", "iv"), required=required)
        p.add_argument("--params", help="case parameter file")
        p.add_argument("--branch", choices=[b.value for b in Branch])

    p = sub.add_parser("verify", help="check a candidate against an equation")
    p.add_argument("--equation", required=True)
    p.add_argument("--solution", required=True, help="expression or file holding one")
    p.add_argument("--numeric", action="store_true", help="add the sampled residual check")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build the candidate of a theorem case")
    case_args(p)
    p.add_argument("--solve-xi", action="store_true",
                   help="solve xi (or the L1/L2 split) from the equation")
    p.add_argument("--xi-index", type=int, choices=(0, 1), default=0)
    p.add_argument("--log-branch", type=int, default=0)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve-params", help="solve the exponential constraint of a case")
    case_args(p)
    p.add_argument("--log-branch", type=int, default=0)
    p.set_defaults(func=cmd_solve_params)

    p = sub.add_parser("check-constraints", help="evaluate the constraints of a case")
    case_args(p)
    p.set_defaults(func=cmd_check_constraints)

    p = sub.add_parser("examples", help="audit the embedded worked examples")
    p.add_argument("--id", choices=sorted(FIXTURES))
    p.add_argument("--mode", choices=MODES)
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("fuzz", help="randomised constructor soundness")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--theorem", choices=sorted(CASES))
    p.add_argument("--case", choices=("i", "ii", "iii", "iv"))
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_fuzz)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "theorem", None) and getattr(args, "case", None) and args.command != "fuzz":
        if args.case not in CASES[args.theorem]:
            ap.error(f"theorem {args.theorem} has no case {args.case}")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ConfigError as exc:
        where = f" (key {exc.key!r})" if exc.key else ""
        print(f"error: {exc}{where}", file=sys.stderr)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ValidationError as exc:
        why = f" [hypothesis {exc.hypothesis}]" if exc.hypothesis else ""
        print(f"error: {exc}{why}", file=sys.stderr)
    except TrinomialError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
