"""Command-line front end.

Subcommands: eval, audit, measure, bounds, table, fixtures, tabulate,
symmetrize, decompose.  Reports go to stdout (JSON by default, CSV or a
plain table on request), diagnostics to stderr.

Exit codes: 0 success; 1 an audit failed, a bound is violated, a table cell
mismatches its closed form, or a decomposition is infeasible (a witness or
certificate is printed); 2 input error; 3 enumeration budget exceeded.
All value cells are exact fraction strings; ``--decimals K`` adds a
presentation-only approximation column to csv/table output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .axioms import audit_gibbard, audit_strategyproof, audit_symmetries, is_strategyproof
from .budget import current_budget
from .errors import (
    BudgetExceededError,
    InfeasibleDecompositionError,
    NotStrategyproofError,
    ProfileFormatError,
    RuleError,
    ScopeError,
    SdslabError,
)
from .metrics import known_metric_formulas, measure, verify_theorem_bounds
from .profiles import format_profile, parse_profile
from .rules import (
    REGISTRY_NAMES,
    evaluate,
    registry_rule,
    rule_from_json,
    tabulate,
    tabulation_from_jsonl,
    tabulation_to_jsonl,
)
from .transforms import (
    build_cwc_profile,
    build_minimal_margin_profile,
    build_unanimous_profile,
    decompose_scoring,
    symmetrize,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def resolve_rule(name, m, n):
    """Registry name, ``point:FILE`` / ``support:FILE`` / ``mix:FILE`` /
    ``rule:FILE`` descriptor files, or ``tab:FILE`` tabulations."""
    if ":" in name:
        kind, path = name.split(":", 1)
        if kind == "tab":
            return tabulation_from_jsonl(_read_text(path))
        data = json.loads(_read_text(path))
        if kind in ("point", "support", "mix", "rule"):
            return rule_from_json(data)
        raise RuleError(f"unknown rule source {kind!r}")
    return registry_rule(name, m, n)


def _approx(value, decimals):
    return f"{float(value):.{decimals}f}"


def _emit_json(data):
    print(json.dumps(data, separators=(",", ":")))


def _emit_lottery(lottery, args):
    if args.format == "json":
        _emit_json(lottery.as_dict())
        return
    rows = [("alternative", "probability") + (("approx",) if args.decimals else ())]
    for label, value in lottery.as_dict().items():
        row = (label, value)
        if args.decimals:
            row += (_approx(Fraction(value), args.decimals),)
        rows.append(row)
    _emit_rows(rows, args)


def _emit_rows(rows, args):
    if args.format == "csv":
        for row in rows:
            print(",".join(str(cell) for cell in row))
    else:
        widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
        for row in rows:
            print("  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)))


def cmd_eval(args):
    profile = parse_profile(_read_text(args.profile))
    spec = resolve_rule(args.rule, profile.m, profile.n)
    _emit_lottery(evaluate(spec, profile), args)
    return EXIT_OK


def cmd_audit(args):
    spec = resolve_rule(args.rule, args.m, args.n)
    wanted = args.axioms.split(",")
    reports = []
    if "sp" in wanted or "all" in wanted:
        reports.append(audit_strategyproof(spec, args.m, args.n, budget=args.budget))
    if "gibbard" in wanted or "all" in wanted:
        reports.append(audit_gibbard(spec, args.m, args.n, budget=args.budget))
    if "symmetries" in wanted or "all" in wanted:
        reports.append(audit_symmetries(spec, args.m, args.n, budget=args.budget))
    if not reports:
        raise RuleError(f"no known axioms in {args.axioms!r} (sp, gibbard, symmetries, all)")
    merged = {"scope": {"m": args.m, "n": args.n, "mode": "full"}, "verdicts": {}}
    for report in reports:
        merged["verdicts"].update(report.to_json()["verdicts"])
    _emit_json(merged)
    return EXIT_OK if all(r.holds() for r in reports) else EXIT_VIOLATION


def cmd_measure(args):
    spec = resolve_rule(args.rule, args.m, args.n)
    metrics = tuple(args.metrics.split(","))
    try:
        report = measure(
            spec, args.m, args.n, metrics=metrics, mode=args.mode, budget=args.budget
        )
    except NotStrategyproofError as err:
        _emit_json({"error": "not strategyproof", "witness": err.witness.to_json()})
        return EXIT_VIOLATION
    if args.format == "json":
        _emit_json(report.to_json())
    else:
        rows = [("metric", "value", "witness") + (("approx",) if args.decimals else ())]
        for name in metrics:
            result = getattr(report, name)
            blob = result.to_json()
            witness = blob.get("profile", "")
            row = (name, blob["value"], witness)
            if args.decimals:
                row += (_approx(result.value, args.decimals),)
            rows.append(row)
        _emit_rows(rows, args)
    return EXIT_OK


def cmd_bounds(args):
    spec = resolve_rule(args.rule, args.m, args.n)
    strategyproof = is_strategyproof(spec, args.m, args.n, budget=args.budget)
    metrics = ("alpha", "beta", "gamma") if strategyproof else ("alpha", "beta")
    report = measure(
        spec, args.m, args.n, metrics=metrics, mode=args.mode, budget=args.budget
    )
    bounds = verify_theorem_bounds(report, strategyproof)
    _emit_json(
        {
            "strategyproof": strategyproof,
            "metrics": report.to_json(),
            "bounds": bounds.to_json(),
        }
    )
    return EXIT_OK if bounds.all_hold() else EXIT_VIOLATION


def cmd_table(args):
    mismatch = None
    header = ("rule",)
    for metric in ("alpha", "beta", "gamma"):
        header += (metric, f"{metric}_formula")
        if args.decimals:
            header += (f"{metric}_approx",)
    rows = [header]
    for name in ("rd-uniform", "uniform", "borda", "copeland"):
        spec = registry_rule(name, args.m, args.n)
        report = measure(spec, args.m, args.n, mode=args.mode, budget=args.budget)
        formulas = known_metric_formulas(name, args.m, args.n)
        row = (name,)
        for metric in ("alpha", "beta", "gamma"):
            measured = getattr(report, metric).value
            expected = formulas[metric]
            if expected is None:
                cell = "n/a"
            elif expected == measured:
                cell = str(expected)
            else:
                cell = f"formula={expected}!"
                mismatch = mismatch or (name, metric, measured, expected)
            row += (str(measured), cell)
            if args.decimals:
                row += (_approx(measured, args.decimals),)
        rows.append(row)
    _emit_rows(rows, args)
    if mismatch:
        name, metric, measured, expected = mismatch
        print(
            f"mismatch in row {name}, column {metric}: measured {measured}, "
            f"closed form {expected}",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_fixtures(args):
    if args.kind == "cwc":
        profile, candidates = build_cwc_profile(args.m, args.n)
        print(f"# condorcet winner candidates: {', '.join(chr(97 + c) for c in candidates)}")
    elif args.kind == "minimal-margin":
        profile = build_minimal_margin_profile(args.m, args.n, args.x)
    elif args.kind == "unanimous":
        profile = build_unanimous_profile(args.m, args.n, args.x, args.y)
    else:
        raise ScopeError(f"unknown fixture kind {args.kind!r}")
    for pref in profile.voters:
        print("1: " + ">".join(chr(97 + a) for a in pref))
    return EXIT_OK


def cmd_tabulate(args):
    spec = resolve_rule(args.rule, args.m, args.n)
    sys.stdout.write(tabulation_to_jsonl(tabulate(spec, args.m, args.n, budget=args.budget)))
    return EXIT_OK


def cmd_symmetrize(args):
    spec = resolve_rule(args.rule, args.m, args.n)
    sys.stdout.write(tabulation_to_jsonl(symmetrize(spec, args.m, args.n, budget=args.budget)))
    return EXIT_OK


def cmd_decompose(args):
    tab = tabulation_from_jsonl(_read_text(args.tabulation))
    try:
        decomposition = decompose_scoring(tab, budget=args.budget)
    except InfeasibleDecompositionError as err:
        _emit_json({"feasible": False, "certificate": str(err.certificate)})
        return EXIT_VIOLATION
    _emit_json({"feasible": True, **decomposition.to_json()})
    return EXIT_OK


def _add_common(parser, scope=True, rule=True, mode=False):
    if rule:
        parser.add_argument(
            "--rule",
            required=True,
            help=f"rule name ({', '.join(REGISTRY_NAMES)}) or point:/support:/mix:/rule:/tab:FILE",
        )
    if scope:
        parser.add_argument("-m", type=int, required=True, help="number of alternatives")
        parser.add_argument("-n", type=int, required=True, help="number of voters")
    if mode:
        parser.add_argument(
            "--mode",
            choices=("full", "anonymous"),
            default="full",
            help="enumeration mode (anonymous is sound for anonymous rules only)",
        )
    parser.add_argument("--budget", type=int, default=None, help="evaluation budget override")
    parser.add_argument("--format", choices=("json", "csv", "table"), default="json")
    parser.add_argument(
        "--decimals", type=int, default=0, help="add a decimal approximation column"
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sdslab",
        description="Exact-arithmetic laboratory for randomized voting rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a rule on a profile file")
    p.add_argument("--profile", required=True, help="profile file, or - for stdin")
    _add_common(p, scope=False)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("audit", help="run exhaustive axiom audits")
    _add_common(p)
    p.add_argument("--axioms", default="all", help="comma list: sp,gibbard,symmetries,all")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("measure", help="measure alpha/beta/gamma exactly")
    _add_common(p, mode=True)
    p.add_argument("--metrics", default="alpha,beta,gamma")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("bounds", help="check the theorem bounds against measured values")
    _add_common(p, mode=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="measured vs closed-form metric table for the named rules")
    _add_common(p, rule=False, mode=True)
    p.set_defaults(func=cmd_table, format="table")

    p = sub.add_parser("fixtures", help="emit proof-profile fixtures")
    p.add_argument("kind", choices=("cwc", "minimal-margin", "unanimous"))
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-x", type=int, default=0, help="focal alternative index")
    p.add_argument("-y", type=int, default=1, help="second alternative index (unanimous)")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("tabulate", help="tabulate a rule as JSON lines")
    _add_common(p)
    p.set_defaults(func=cmd_tabulate)

    p = sub.add_parser("symmetrize", help="average a rule over all symmetries, as JSON lines")
    _add_common(p)
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("decompose", help="split a tabulation into point voting + supporting size")
    p.add_argument("tabulation", nargs="?", default="-", help="JSON-lines file, or - for stdin")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_decompose)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (ProfileFormatError, RuleError, ScopeError, ValueError, OSError,
            json.JSONDecodeError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except SdslabError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
