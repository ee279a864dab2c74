"""Command-line entry point: ``pandigital <subcommand> ...``.

Exit codes: 0 success or all-match, 1 usage error, 2 OEIS mismatch,
3 budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Callable, List, Sequence

from . import __version__
from .digits import Family, classify, describe, parse, render, to_digits
from .oeis import EmptyIntersection, BfileError, compare, read_bfile
from .residues import aset
from .search import (DEFAULT_BUDGET as SEARCH_BUDGET, SearchBudgetExceeded, SearchState,
                     conjecture_digit_sum_report, lower_bound, smallest_prime)
from .squares import (DEFAULT_BUDGET as SQUARE_BUDGET, BudgetExceeded, count_strict_squares,
                      enumerate_strict_squares, square_existence_report)

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3
JOBS_ENV = "PANDIGITAL_JOBS"
SCHEMA_VERSION = 1

CONJECTURES = {
    "1": ("square-existence", (Family.PANDIGITAL, Family.PENHOLODIGITAL), range(5, 13)),
    "2": ("prime-digit-sum", (Family.PANDIGITAL, Family.PENHOLODIGITAL), range(5, 15)),
    "3": ("sub-square-existence", (Family.SUBPANDIGITAL, Family.SUBPENHOLODIGITAL), range(8, 13)),
    "4": ("sub-prime-digit-sum", (Family.SUBPANDIGITAL, Family.SUBPENHOLODIGITAL), range(5, 15)),
}
_CONJECTURE_ALIASES = {name: key for key, (name, _, _) in CONJECTURES.items()}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Output:
    command: str
    params: dict
    results: object
    rows: List[dict] = field(default_factory=list)
    plain: List[str] = field(default_factory=list)
    status: int = EXIT_OK

    def record(self) -> dict:
        return {"tool": "pandigital", "version": __version__, "schema": SCHEMA_VERSION,
                "command": self.command, "params": self.params, "results": self.results}


def _num(n: int) -> str:
    # values travel as decimal strings so nothing is ever rounded through a float
    return str(n)


def _bases(text: str) -> List[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI or a single base, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError(f"empty base range {text!r}")
    return out


def _family(text: str) -> Family:
    try:
        return Family.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _check_base(b: int, family: Family | None = None, minimum: int = 2) -> None:
    if family is not None:
        minimum = max(minimum, family.min_base())
    if b < minimum:
        what = f"{family.value} " if family is not None else ""
        raise UsageError(f"{what}needs base >= {minimum}, got {b}")


# -- subcommands ------------------------------------------------------------

def cmd_aset(args) -> Output:
    _check_base(args.base, minimum=3)
    rs = aset(args.base)
    members = ", ".join(str(m) for m in rs.members)
    res = {"base": rs.base, "modulus": rs.modulus, "members": list(rs.members),
           "prediction": rs.prediction.value, "agrees_with_theory": rs.agrees_with_theory()}
    plain = [f"A_{rs.base} = {{{members}}} (theory: {rs.prediction.value})"]
    row = dict(res, members=" ".join(str(m) for m in rs.members))
    return Output("aset", {"base": args.base}, res, [row], plain)


def cmd_classify(args) -> Output:
    _check_base(args.base)
    try:
        ds = parse(args.value, args.base) if args.digits else to_digits(int(args.value), args.base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    labels = sorted(classify(ds), key=lambda c: (list(Family).index(c.family), c.strict))
    res = {"base": args.base, "value": _num(ds.value), "digits": render(ds),
           "labels": [{"family": c.family.value, "strict": c.strict} for c in labels]}
    row = {"base": args.base, "value": _num(ds.value), "digits": render(ds), "labels": describe(labels)}
    return Output("classify", {"base": args.base, "value": args.value, "digits": args.digits},
                  res, [row], [describe(labels)])


def cmd_squares(args) -> Output:
    fam = args.family
    _check_base(args.base, fam)
    if args.loose:
        raise UsageError("square results concern strict numbers only; drop --loose")
    budget = None if args.budget == 0 else args.budget
    try:
        res = enumerate_strict_squares(args.base, fam, budget=budget, jobs=args.jobs,
                                       residue_filter=not args.no_filter)
    except BudgetExceeded as exc:
        raise _Budget(str(exc)) from None
    b = args.base
    rows = [{"root": _num(m), "square": _num(m * m), "square_digits": render(to_digits(m * m, b))}
            for m in res.roots]
    results = {"base": b, "family": fam.value, "strict": True, "count": res.count,
               "scanned": res.scanned, "filtered": res.filtered}
    if not args.count:
        results["roots"] = rows
    plain = [f"base {b} {fam.value} (strict) squares: {res.count} "
             f"(scanned {res.scanned}, residue-filtered {res.filtered})"]
    if not args.count:
        plain += [f"{r['root']}^2 = {r['square']} = {r['square_digits']}" for r in rows]
    params = {"base": b, "family": fam.value, "budget": budget, "residue_filter": not args.no_filter}
    csv_rows = rows if not args.count else [{"base": b, "family": fam.value, "count": res.count}]
    return Output("squares", params, results, csv_rows, plain)


def _report_dict(rep) -> dict:
    return {"base": rep.base, "family": rep.family.value, "smallest_prime": _num(rep.smallest_prime),
            "digits": render(rep.digits), "digit_sum": rep.digit_sum,
            "digit_length": rep.digit_length, "verdict": rep.verdict.classification.value,
            "method": rep.verdict.method.value, "candidates_tested": rep.candidates_tested,
            "multisets_pruned": rep.multisets_pruned}


def cmd_prime_search(args) -> Output:
    fam = args.family
    _check_base(args.base, fam, minimum=3)
    if args.strict:
        raise UsageError("no strict member of any family is prime for base > 3; "
                         "prime search is always over loose members")
    state = None
    if args.resume:
        try:
            state = SearchState.load(args.resume)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read resume state: {exc}") from None
    try:
        rep = smallest_prime(args.base, fam, budget=args.budget, jobs=args.jobs, state=state)
    except SearchBudgetExceeded as exc:
        if args.state_out:
            exc.state.save(args.state_out)
            raise _Budget(f"{exc}; state written to {args.state_out}") from None
        raise _Budget(f"{exc}; state: {json.dumps(exc.state.to_json())}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = _report_dict(rep)
    plain = [f"{rep.base}  {rep.smallest_prime}  {render(rep.digits)}  "
             f"{rep.verdict.classification.value} ({rep.verdict.method.value}); "
             f"digit sum {rep.digit_sum}, {rep.candidates_tested} tested, "
             f"{rep.multisets_pruned} multisets pruned"]
    params = {"base": args.base, "family": fam.value, "budget": args.budget,
              "resumed": bool(args.resume)}
    return Output("prime-search", params, res, [res], plain)


def cmd_bounds(args) -> Output:
    fam = args.family
    try:
        bs = lower_bound(args.base, fam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    def frac(x):
        return _num(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    res = {"base": bs.base, "family": fam.value, "bound": _num(bs.bound_value),
           "digits": render(bs.bound_digits), "source": bs.source.value,
           "closed_form": frac(bs.closed_form), "exact_closed_form": frac(bs.exact_closed_form),
           "closed_form_matches": bs.closed_form_matches, "warning": bs.warning()}
    plain = [f"base {bs.base} {fam.value} primes >= {bs.bound_value} = {render(bs.bound_digits)} "
             f"({bs.source.value})"]
    if bs.warning():
        plain.append(f"warning: {bs.warning()}")
    return Output("bounds", {"base": args.base, "family": fam.value}, res, [res], plain)


def cmd_conjectures(args) -> Output:
    key = _CONJECTURE_ALIASES.get(args.which, args.which)
    name, families, default_bases = CONJECTURES[key]
    bases = args.bases or list(default_bases)
    for b in bases:
        _check_base(b, minimum=3)
    rows: List[dict] = []
    try:
        if key in ("1", "3"):
            budget = None if args.budget == 0 else (args.budget or SQUARE_BUDGET)
            for r in square_existence_report(bases, families, budget=budget, jobs=args.jobs):
                rows.append({"base": r.base, "family": r.family.value, "count": r.count,
                             "predicted_exists": r.predicted, "status": r.status})
        else:
            budget = args.budget or SEARCH_BUDGET
            for fam in families:
                for r in conjecture_digit_sum_report(bases, fam, budget=budget, jobs=args.jobs):
                    rows.append({"base": r.base, "family": r.family.value,
                                 "smallest_prime": _num(r.smallest_prime), "digits": render(r.digits),
                                 "digit_sum": r.digit_sum, "predicted": r.predicted,
                                 "status": r.status})
    except (BudgetExceeded, SearchBudgetExceeded) as exc:
        raise _Budget(str(exc)) from None
    mismatches = sum(r["status"] == "mismatch" for r in rows)
    res = {"conjecture": key, "name": name, "rows": rows,
           "checked": sum(r["status"] != "n/a" for r in rows), "mismatches": mismatches}
    plain = [f"{name}: {res['checked']} checked, {mismatches} mismatches"]
    for r in rows:
        if "count" in r:
            pred = {None: "-", True: "yes", False: "no"}[r["predicted_exists"]]
            plain.append(f"{r['base']:>4}  {r['family']:<18} squares {r['count']:>6}  "
                         f"predicted {pred:<3}  {r['status']}")
        else:
            pred = "-" if r["predicted"] is None else r["predicted"]
            plain.append(f"{r['base']:>4}  {r['family']:<18} {r['smallest_prime']:>28}  "
                         f"{r['digits']:>22}  s={r['digit_sum']:<4} predicted {pred!s:<4} {r['status']}")
    return Output("conjectures", {"which": key, "bases": bases}, res, rows, plain)


def computed_sequence(what: str, family: Family, bases: Sequence[int], *, offset: int = 0,
                      jobs: int = 1, budget: int | None = None) -> List[tuple]:
    """(index, value) pairs with index = base - offset."""
    out = []
    for b in bases:
        if what == "square-counts":
            value = count_strict_squares(b, family, jobs=jobs,
                                         budget=SQUARE_BUDGET if budget is None else budget or None)
        else:
            value = smallest_prime(b, family, jobs=jobs, budget=budget or SEARCH_BUDGET).smallest_prime
        out.append((b - offset, value))
    return out


def cmd_oeis_check(args) -> Output:
    fam = args.family
    for b in args.bases:
        _check_base(b, fam, minimum=3 if args.what == "smallest-primes" else 2)
    try:
        ref = read_bfile(args.bfile, args.seq)
    except OSError as exc:
        raise UsageError(f"cannot read b-file: {exc}") from None
    except BfileError as exc:
        raise UsageError(f"{args.bfile}: {exc}") from None
    indices = set(ref.indices)
    bases = [b for b in args.bases if b - args.offset in indices]
    if not bases:
        raise UsageError(f"bases {args.bases[0]}..{args.bases[-1]} (offset {args.offset}) hit no "
                         f"index of {args.seq}, which covers {ref.indices[0] if ref.indices else '-'}"
                         f"..{ref.indices[-1] if ref.indices else '-'}")
    try:
        computed = computed_sequence(args.what, fam, bases, offset=args.offset,
                                     jobs=args.jobs, budget=args.budget)
    except (BudgetExceeded, SearchBudgetExceeded) as exc:
        raise _Budget(str(exc)) from None
    try:
        rep = compare(computed, ref)
    except EmptyIntersection as exc:
        raise UsageError(str(exc)) from None
    rows = [{"index": r.index, "base": r.index + args.offset, "computed": _num(r.computed),
             "reference": _num(r.reference), "match": r.match} for r in rep.rows]
    res = {"sequence": args.seq, "what": args.what, "family": fam.value, "rows": rows,
           "matches": rep.matches, "mismatches": list(rep.mismatches), "all_match": rep.all_match}
    plain = [f"{args.seq}: {rep.matches}/{len(rep.rows)} match"
             + ("" if rep.all_match else f"; mismatch at {', '.join(map(str, rep.mismatches))}")]
    plain += [f"{r['index']:>4}  computed {r['computed']}  reference {r['reference']}  "
              f"{'ok' if r['match'] else 'MISMATCH'}" for r in rows]
    params = {"bfile": os.path.basename(args.bfile), "seq": args.seq, "what": args.what,
              "family": fam.value, "bases": args.bases, "offset": args.offset}
    return Output("oeis-check", params, res, rows, plain, rep.exit_status)


class _Budget(Exception):
    pass


# -- plumbing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pandigital", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, jobs=False):
        p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
        if jobs:
            p.add_argument("--jobs", type=int, default=_default_jobs(),
                           help=f"worker processes (default ${JOBS_ENV} or 1)")
        return p

    p = common(sub.add_parser("aset", help="square roots of b(b-1)/2 modulo b-1"))
    p.add_argument("--base", type=int, required=True)
    p.set_defaults(func=cmd_aset)

    p = common(sub.add_parser("classify", help="digit-class labels of a number"))
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--digits", action="store_true", help="VALUE is written in base B, not decimal")
    p.add_argument("value", metavar="VALUE")
    p.set_defaults(func=cmd_classify)

    p = common(sub.add_parser("squares", help="strict squares of a family"), jobs=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--family", type=_family, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true", help="list roots (default)")
    mode.add_argument("--count", action="store_true", help="only count")
    strict = p.add_mutually_exclusive_group()
    strict.add_argument("--strict", action="store_true", help="accepted; squares are always strict")
    strict.add_argument("--loose", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--budget", type=int, default=SQUARE_BUDGET, help="candidate cap, 0 for none")
    p.add_argument("--no-filter", action="store_true", help="scan every root, skip residue pruning")
    p.set_defaults(func=cmd_squares)

    p = common(sub.add_parser("prime-search", help="smallest prime member of a family"), jobs=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--strict", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--budget", type=int, default=SEARCH_BUDGET, help="primality-test cap")
    p.add_argument("--resume", metavar="FILE", help="continue from a saved search state")
    p.add_argument("--state-out", metavar="FILE", help="where to save state if the budget runs out")
    p.set_defaults(func=cmd_prime_search)

    p = common(sub.add_parser("bounds", help="lower bound for primes of a family"))
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--family", type=_family, required=True)
    p.set_defaults(func=cmd_bounds)

    p = common(sub.add_parser("conjectures", help="check the square-existence and digit-sum patterns"),
               jobs=True)
    p.add_argument("--which", required=True, choices=sorted(CONJECTURES) + sorted(_CONJECTURE_ALIASES),
                   help="1 square-existence, 2 prime-digit-sum, 3 sub-square-existence, "
                        "4 sub-prime-digit-sum")
    p.add_argument("--bases", type=_bases, help="LO..HI")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_conjectures)

    p = common(sub.add_parser("oeis-check", help="diff computed values against a local b-file"),
               jobs=True)
    p.add_argument("--bfile", required=True)
    p.add_argument("--seq", required=True, help="sequence id, e.g. A258103")
    p.add_argument("--what", required=True, choices=("square-counts", "smallest-primes"))
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--bases", type=_bases, required=True, help="LO..HI")
    p.add_argument("--offset", type=int, default=0, help="b-file index = base - OFFSET")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_oeis_check)
    return parser


def _csv(rows: List[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    fields: List[str] = []
    for r in rows:
        fields += [k for k in r if k not in fields]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def format_output(out: Output, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out.record(), indent=2) + "\n"
    if fmt == "csv":
        return _csv(out.rows)
    return "\n".join(out.plain) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    handler: Callable[..., Output] = args.func
    try:
        out = handler(args)
    except UsageError as exc:
        print(f"pandigital {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _Budget as exc:
        print(f"pandigital {args.command}: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    sys.stdout.write(format_output(out, args.format))
    return out.status


if __name__ == "__main__":
    sys.exit(main())
