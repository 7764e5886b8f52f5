"""Command-line frontend: define, list, check, eval.

Exit codes: 0 success, 1 a check failed, 2 usage / parse / validation error,
3 a substitution or size budget was exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence

from .endo import MINUS, PLUS, enumerate_aut
from .errors import AutGroupError, BudgetExceeded, NotExtreme
from .folang.corpus import load_corpus
from .folang.evaluator import DEFAULT_BUDGET, Environment, evaluate
from .folang.parser import parse
from .groups import GroupFileError, GroupSpec, invariant_factors, load_group
from .predicates.catalog import describe_value
from .predicates.families import canonical_family
from .predicates.primitives import DEFAULT_OPTIONS
from .report import Conventions, build_report, exit_code, summary_lines, write_report
from .suites import DEFAULT_LIMIT, SUITES, SuiteContext, run_suite
from .universe import Universe

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "AUTPGROUP_BUDGET"
SUITE_NAMES = list(SUITES) + ["all"]
LIST_KINDS = ("aut", "involutions", "extreme", "pairs")

_CONVENTIONS = {
    "side-tiebreak": {"minus": MINUS, "plus": PLUS},
    "zero-encoder": {"on": True, "off": False},
    "identity-involution": {"on": True, "off": False},
    "similarity": {"enc_eq": "enc_eq", "enc-eq": "enc_eq", "sim": "sim"},
}


class UsageError(Exception):
    pass


def parse_conventions(items: Sequence[str]) -> Conventions:
    c = Conventions()
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--convention expects NAME=VALUE, got {item!r}")
        name, value = (s.strip() for s in item.split("=", 1))
        table = _CONVENTIONS.get(name)
        if table is None:
            raise UsageError(f"unknown convention {name!r}; known: {', '.join(_CONVENTIONS)}")
        if value not in table:
            raise UsageError(f"convention {name} takes one of {', '.join(table)}")
        setattr(c, name.replace("-", "_"), table[value])
    return c


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def _matrix(m) -> list[list[int]]:
    return [list(map(int, r)) for r in m]


def _universe(group: GroupSpec, conv: Conventions) -> Universe:
    return Universe(group, include_identity=conv.identity_involution, tie=conv.side_tiebreak)


# define / list ---------------------------------------------------------------------
def cmd_define(args) -> int:
    g = load_group(args.group)
    out = {"p": g.p, "exponents": list(g.exponents), "moduli": list(g.moduli),
           "description": g.describe(), "size": g.size}
    try:
        out["aut_order"] = len(enumerate_aut(g))
    except BudgetExceeded as exc:
        out["aut_order"] = None
        out["aut_note"] = str(exc)
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK


def list_objects(kind: str, u: Universe) -> list[dict]:
    if kind == "aut":
        return [{"matrix": _matrix(a.matrix)} for a in u.auts]
    if kind == "involutions":
        return [{"matrix": _matrix(i.auto.matrix),
                 "plus_factors": list(invariant_factors(i.plus)),
                 "minus_factors": list(invariant_factors(i.minus))} for i in u.involutions]
    if kind == "extreme":
        return [{"matrix": _matrix(e.auto.matrix), "side": e.side, "order": e.order,
                 "core_size": e.core.size} for e in u.extremes]
    if kind == "pairs":
        return [{"xi": _matrix(p.xi.auto.matrix), "eps": _matrix(p.eps.auto.matrix), "eps_side": p.eps.side,
                 "side": p.side, "summand_factors": list(invariant_factors(p.summand))} for p in u.pairs]
    raise UsageError(f"unknown kind {kind!r}")


def cmd_list(args) -> int:
    conv = parse_conventions(args.convention)
    u = _universe(load_group(args.group), conv)
    items = list_objects(args.kind, u)
    print(json.dumps({"kind": args.kind, "count": len(items), "items": items}, sort_keys=True))
    return EXIT_OK


# check -----------------------------------------------------------------------------
def run_check(group: GroupSpec, suite: str, budget: int, conv: Conventions,
              limit: Optional[int] = DEFAULT_LIMIT) -> dict:
    u = _universe(group, conv)
    ctx = SuiteContext(u, budget, limit, zero_convention=conv.zero_encoder, similar=conv.similarity)
    t = time.perf_counter()
    results = run_suite(suite, ctx)
    return build_report(group, suite, results, conv, budget, limit, time.perf_counter() - t)


def cmd_check(args) -> int:
    conv = parse_conventions(args.convention)
    g = load_group(args.group)
    limit = None if args.limit == 0 else args.limit
    report = run_check(g, args.suite, args.budget, conv, limit)
    if args.out:
        write_report(report, args.out)
    if not args.quiet:
        print("\n".join(summary_lines(report)))
    return exit_code(report)


# eval ------------------------------------------------------------------------------
def read_formula(source: str):
    """(formula text, corpus entry or None) from a corpus name, file path or inline text."""
    corpus = load_corpus()
    if source in corpus:
        return corpus[source].text, corpus[source]
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read(), None
    return source, None


def parse_binding(item: str, u: Universe):
    """name=MATRIX for an automorphism, name=MATRIX:plus|minus for an extreme involution."""
    if "=" not in item:
        raise UsageError(f"--bind expects name=matrix, got {item!r}")
    name, raw = (s.strip() for s in item.split("=", 1))
    side = None
    for s in (PLUS, MINUS):
        if raw.endswith(":" + s):
            raw, side = raw[: -len(s) - 1], s
    if raw == "id":
        auto = u.identity
    else:
        try:
            auto = u.from_matrix(json.loads(raw))
        except json.JSONDecodeError as exc:
            raise UsageError(f"binding {name}: matrix is not JSON ({exc})") from None
    if side is None:
        return name, auto
    try:
        return name, u.extreme(auto, side)
    except KeyError:
        raise NotExtreme(f"binding {name}: the {side} side is not a nonzero cyclic summand") from None


def cmd_eval(args) -> int:
    conv = parse_conventions(args.convention)
    g = load_group(args.group)
    u = _universe(g, conv)
    text, entry = read_formula(args.formula)
    formula = entry.formula if entry is not None else parse(text)
    bindings = dict(parse_binding(b, u) for b in args.bind or ())
    opts = dict(DEFAULT_OPTIONS)
    opts.update(family=canonical_family(g), zero_convention=conv.zero_encoder, similar=conv.similarity)
    out = evaluate(formula, Environment(u, bindings, args.budget, None, opts))
    print(json.dumps({
        "formula": entry.name if entry is not None else text.strip(),
        "value": out.value,
        "witnesses": [[k, describe_value(v)] for k, v in out.witnesses],
        "substitutions": out.substitutions,
    }, sort_keys=True))
    return EXIT_OK


# entry point ------------------------------------------------------------------------
def _limit(s: str) -> int:
    n = int(s)
    if n < 0:
        raise argparse.ArgumentTypeError("limit must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="autpgroup", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, budget=False):
        p.add_argument("--group", required=True, help="group file, or inline JSON / key=value text")
        p.add_argument("--convention", action="append", default=[], metavar="NAME=VALUE",
                       help="side-tiebreak=minus|plus, zero-encoder=on|off, "
                            "identity-involution=on|off, similarity=enc_eq|sim")
        if budget:
            p.add_argument("--budget", type=int, default=None,
                           help=f"substitution budget (default ${BUDGET_ENV} or {DEFAULT_BUDGET})")

    p = sub.add_parser("define", help="validate a group and print its normal form")
    p.add_argument("--group", required=True)
    p.set_defaults(fn=cmd_define)

    p = sub.add_parser("list", help="list automorphism-level objects")
    p.add_argument("kind", choices=LIST_KINDS)
    common(p)
    p.set_defaults(fn=cmd_list)

    p = sub.add_parser("check", help="run a verification suite and write a JSON report")
    common(p, budget=True)
    p.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--limit", type=_limit, default=DEFAULT_LIMIT,
                   help=f"bindings per sampled sweep; 0 = exhaustive (default {DEFAULT_LIMIT})")
    p.add_argument("--quiet", action="store_true", help="no summary on stdout")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("eval", help="evaluate a corpus name, formula file or inline formula")
    common(p, budget=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--bind", action="append", default=[], metavar="NAME=MATRIX[:plus|minus]")
    p.set_defaults(fn=cmd_eval)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if getattr(args, "budget", 0) is None:
            args.budget = default_budget()
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GroupFileError, AutGroupError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
