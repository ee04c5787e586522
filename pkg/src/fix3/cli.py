"""Command-line entry point: ``fix3 check|spectrum|table|small|parse``.

Exit codes: 0 when every verdict is as expected, 1 on a verdict mismatch,
2 on a tool error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import GroupFileError
from .groupfile import format_group_file, parse_group_file
from .harness import CASE_ERRORS, CaseSpec, Report, exit_code, run_all, run_case
from .hypothesis import check_exhaustive, check_tree
from .perm import enumeration_bound
from .recipes import build_case
from .small import classify_small

EXHAUSTIVE_DEGREE = 5000
TREE_DEGREE = 10**5


def _auto_tier(recipe: str, subgroup: str | None) -> str:
    if subgroup == "all":
        return "exhaustive"
    case = build_case(recipe, subgroup)
    g = case.group.order()
    degree = g // case.subgroup.order()
    if degree <= EXHAUSTIVE_DEGREE and g <= enumeration_bound():
        return "exhaustive"
    if degree <= TREE_DEGREE:
        return "tree"
    if g <= enumeration_bound():
        return "structural"
    raise ValueError("no automatic tier applies; pass --tier conditional explicitly")


def _print_report(rep: Report) -> None:
    print(rep.to_json())


def cmd_check(args) -> int:
    tier = args.tier or _auto_tier(args.recipe, args.subgroup)
    label = args.recipe if args.subgroup is None else f"{args.recipe}/{args.subgroup}"
    spec = CaseSpec(label, args.recipe, args.subgroup, tier, None, None, "ad hoc",
                    expected_satisfied=(args.expect == "satisfied"))
    rep = run_case(spec)
    _print_report(rep)
    if rep.status == "error":
        print(rep.error, file=sys.stderr)
    return exit_code([rep], allow_conditional=args.allow_conditional or tier == "conditional")


def cmd_spectrum(args) -> int:
    case = build_case(args.recipe, args.subgroup)
    spec = CaseSpec(case.name, args.recipe, args.subgroup, "exhaustive", None, None, "ad hoc")
    rep = run_case(spec)
    if rep.status == "error":
        print(rep.error, file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({"case": rep.case, "degree": rep.degree, "spectrum": rep.spectrum}))
    else:
        print(f"{rep.case}: degree {rep.degree}, |G| = {rep.group_order}")
        for k, count in rep.spectrum.items():
            print(f"  {k:>6} fixed points: {count}")
    return 0


def cmd_table(args) -> int:
    reports = run_all(args.filter, workers=args.workers)
    for r in reports:
        flag = " (conditional)" if r.conditional else ""
        print(f"{r.case:<26} {r.tier:<12} {r.verdict:<14} {r.status:<8} {r.millis:>8} ms{flag}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=1)
            fh.write("\n")
    return exit_code(reports, allow_conditional=args.allow_conditional)


def cmd_small(args) -> int:
    for res in classify_small(args.degree):
        gens = " ".join(g.cycle_string() for g in res.group.generators)
        print(f"order {res.order}: {gens}  max_fix={res.verdict.max_fix_nontrivial}")
    return 0


def cmd_parse(args) -> int:
    G = parse_group_file(args.file)
    print(format_group_file(G), end="")
    print(f"# order {G.order()}, transitive {G.is_transitive()}")
    if args.check:
        if G.order() <= enumeration_bound() and G.order() * G.degree <= 10**9:
            verdict, spectrum = check_exhaustive(G)
        else:
            verdict = check_tree(G)
        print(json.dumps(verdict.summary()))
        return 0 if verdict.satisfied else 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fix3", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"fix3 {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide the hypothesis for one action")
    c.add_argument("recipe")
    c.add_argument("--subgroup", help="subgroup recipe (default: the family's own subgroup, else point)")
    c.add_argument("--tier", choices=["exhaustive", "tree", "structural", "conditional"])
    c.add_argument("--expect", choices=["satisfied", "unsatisfied"], default="satisfied")
    c.add_argument("--allow-conditional", action="store_true")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("spectrum", help="fixed-point spectrum by full enumeration")
    s.add_argument("recipe")
    s.add_argument("--subgroup")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    t = sub.add_parser("table", help="run the built-in classification table")
    t.add_argument("--filter")
    t.add_argument("--json", metavar="OUT")
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--allow-conditional", action="store_true")
    t.set_defaults(func=cmd_table)

    m = sub.add_parser("small", help="classify transitive groups of degree at most 6")
    m.add_argument("--degree", type=int, required=True)
    m.set_defaults(func=cmd_small)

    f = sub.add_parser("parse", help="read a group file")
    f.add_argument("file")
    f.add_argument("--check", action="store_true")
    f.set_defaults(func=cmd_parse)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GroupFileError, OSError, ValueError, KeyError, *CASE_ERRORS) as exc:
        print(f"fix3: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
