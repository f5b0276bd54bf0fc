"""Command line front end for the verification suite.

Subcommands:

    qshuffle verify {hecke-identity,group-identity,lemma3,factorization,
                     span,structure-constants} [--n N] [--q LIST] ...
    qshuffle multiplicities [--n N] [--q LIST] [--allow-large]
    qshuffle all

Results go to stdout as human-readable text or as a stable JSON
document (--format json); diagnostics go to stderr.  Exit status is 0
when every check passed, 1 when some check failed, 2 on usage or
validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Sequence

from . import __version__
from .flagmodel import (
    FLAG_BUDGET,
    BudgetExceeded,
    compare_structure_constants,
    verify_factorization,
    verify_lemma3,
    verify_span_commutativity,
)
from .hecke import wallach_group_product, wallach_product
from .report import CheckResult
from .spectral import verify_multiplicities

__all__ = ["main"]

_VERIFY_CHECKS = (
    "hecke-identity",
    "group-identity",
    "lemma3",
    "factorization",
    "span",
    "structure-constants",
)


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        vals = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"could not parse {what} list {text!r}") from None
    if not vals:
        raise ValueError(f"empty {what} list {text!r}")
    return vals


def _parse_t_range(text: str) -> list[int]:
    if ":" in text:
        lo_s, _, hi_s = text.partition(":")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise ValueError(f"could not parse t range {text!r}") from None
        if hi < lo:
            raise ValueError(f"empty t range {text!r}")
        return list(range(lo, hi + 1))
    return _parse_ints(text, "t")


def _add_common(sp: argparse.ArgumentParser, default_q: str) -> None:
    sp.add_argument("--n", type=int, default=3, help="rank (default 3)")
    sp.add_argument(
        "--q",
        default=default_q,
        help=f"comma-separated prime field sizes (default {default_q})",
    )
    sp.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default text)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qshuffle",
        description="Exact verification of the q-deformed top-to-random identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run one named verification")
    pv.add_argument("check", choices=_VERIFY_CHECKS)
    _add_common(pv, "2,3")
    pv.add_argument("--t", default=None, help="t values, e.g. 3 or 1,2,4 or 1:5")
    pv.add_argument("--budget", type=int, default=FLAG_BUDGET,
                    help=f"max number of flags to enumerate (default {FLAG_BUDGET})")
    pv.add_argument("--debug-orbit-checks", action="store_true",
                    help="recheck the structure tensor on second orbit representatives")

    pm = sub.add_parser("multiplicities", help="eigenvalue multiplicities of tau")
    _add_common(pm, "1,2,3")
    pm.add_argument("--allow-large", action="store_true",
                    help="allow n >= 6 (an n! x n! elimination)")

    pa = sub.add_parser("all", help="run the default verification grid")
    pa.add_argument("--q", default="2,3",
                    help="comma-separated prime field sizes (default 2,3)")
    pa.add_argument("--format", choices=("text", "json"), default="text")
    pa.add_argument("--budget", type=int, default=FLAG_BUDGET)
    pa.add_argument("--debug-orbit-checks", action="store_true")
    return parser


def _check_hecke_identity(n: int) -> CheckResult:
    elt = wallach_product(n)
    ok = elt.is_zero()
    details = [{"surviving_terms": len(elt.terms), "pass": ok}]
    return CheckResult("hecke-identity", {"n": n}, ok, details)


def _check_group_identity(n: int) -> CheckResult:
    prod = wallach_group_product(n)
    ok = not prod
    details = [{"surviving_terms": len(prod), "pass": ok}]
    return CheckResult("group-identity", {"n": n}, ok, details)


def _run_verify(args: argparse.Namespace) -> list[CheckResult]:
    n = args.n
    qs = _parse_ints(args.q, "q")
    ts = _parse_t_range(args.t) if args.t is not None else None
    budget = args.budget
    debug = args.debug_orbit_checks
    check = args.check
    if check == "hecke-identity":
        return [_check_hecke_identity(n)]
    if check == "group-identity":
        return [_check_group_identity(n)]
    out = []
    for q in qs:
        if check == "lemma3":
            out.append(verify_lemma3(n, q, ts, budget, debug))
        elif check == "factorization":
            out.append(verify_factorization(n, q, budget, debug))
        elif check == "span":
            out.append(verify_span_commutativity(n, q, budget, debug))
        else:
            out.append(compare_structure_constants(n, q, budget, debug))
    return out


def _run_all(args: argparse.Namespace) -> list[CheckResult]:
    qs = _parse_ints(args.q, "q")
    budget = args.budget
    debug = args.debug_orbit_checks
    results = []
    for n in (2, 3, 4):
        results.append(_check_hecke_identity(n))
        results.append(_check_group_identity(n))
    for n in (2, 3, 4):
        for q in qs:
            results.append(verify_lemma3(n, q, None, budget, debug))
            results.append(verify_factorization(n, q, budget, debug))
            results.append(verify_span_commutativity(n, q, budget, debug))
            results.append(compare_structure_constants(n, q, budget, debug))
    for n in (2, 3, 4):
        results.append(verify_multiplicities(n, qs))
    return results


def _emit_text(results: Iterable[CheckResult]) -> bool:
    ok_all = True
    count = 0
    for r in results:
        count += 1
        print(r.summary())
        if not r.passed:
            ok_all = False
            for row in r.details:
                if not row.get("pass", True):
                    print(f"  FAIL {row}")
    print(f"OVERALL: {'PASS' if ok_all else 'FAIL'} ({count} checks)")
    return ok_all


def _emit_json(command: str, results: Sequence[CheckResult]) -> bool:
    ok_all = all(r.passed for r in results)
    doc = {
        "schema": 1,
        "tool": {"name": "qshuffle", "version": __version__},
        "command": command,
        "pass": ok_all,
        "checks": [r.as_dict() for r in results],
    }
    print(json.dumps(doc, sort_keys=True, indent=2))
    return ok_all


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            results = _run_verify(args)
        elif args.command == "multiplicities":
            results = [
                verify_multiplicities(args.n, _parse_ints(args.q, "q"), args.allow_large)
            ]
        else:
            results = _run_all(args)
    except (BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        ok = _emit_json(args.command, results)
    else:
        ok = _emit_text(results)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
