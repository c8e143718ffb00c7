"""Command-line interface: `apfree check|witness|search|bound|table|conjecture`."""

import argparse
import json
import logging
import sys
from pathlib import Path

from pydantic import ValidationError
from tabulate import tabulate

from .certifier import Certifier
from .config import Settings
from .engine.constraints import build_system
from .engine.feasex import Method
from .engine.ratlin import RatMatrix
from .engine.reduce import initial_matrix
from .exceptions import APFreeError
from .misc.helpers import parse_digit_spec
from .models.certificates import Certificate, InitialMatrix
from .models.digits import DigitSet
from .models.reports import SearchReport
from .search.tables import check_row, find_expectation, render_table

logger = logging.getLogger(__name__)

EXIT_ADMISSIBLE = 0
EXIT_DIFFS = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
EXIT_NOT_ADMISSIBLE = 10


def _add_digit_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--m", type=int, required=True, help="Modulus")
    parser.add_argument("--k", type=int, required=True, help="Progression length")
    parser.add_argument(
        "--digits",
        action="append",
        default=[],
        help="Digits as d1,d2,... (ranges a:b allowed); repeatable",
    )
    parser.add_argument(
        "--interval", action="append", default=[], help="Interval a:b; repeatable, united"
    )


def _digit_set(args: argparse.Namespace) -> DigitSet:
    specs = [*args.digits, *args.interval]
    if not specs:
        raise APFreeError("Give the digit set with --digits and/or --interval")
    digits: list[int] = []
    for spec in specs:
        digits.extend(parse_digit_spec(spec))
    return DigitSet.of(args.m, digits)


def _initial(text: str | None) -> tuple[InitialMatrix | None, RatMatrix | None]:
    if text is None:
        return None, None
    if text.lower().startswith("custom:"):
        path = Path(text.split(":", 1)[1])
        try:
            return InitialMatrix.CUSTOM, RatMatrix.from_text(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise APFreeError(f"Cannot read transformation matrix {path}: {e}") from e
    if text.lower() == "a":
        return InitialMatrix.A, None
    if text.lower() == "rref":
        return InitialMatrix.RREF, None
    raise APFreeError(f"Unknown initial matrix '{text}', expected A, rref or custom:FILE")


def _summary(digit_set: DigitSet, k: int, admissible: bool | None, certificate: Certificate) -> list[list[str]]:
    verdict = {True: "admissible", False: "not admissible", None: "inconclusive"}[admissible]
    rows = [
        ["digits", digit_set.notation()],
        ["m", str(digit_set.m)],
        ["k", str(k)],
        ["verdict", verdict],
        ["certificate", certificate.kind.value],
    ]
    if certificate.trace is not None:
        rows.append(["reduction steps", str(len(certificate.trace.steps))])
    if certificate.rank is not None:
        rows.append(["rank A", str(certificate.rank)])
    if certificate.lp_optimum is not None:
        rows.append(["LP optimum", str(certificate.lp_optimum)])
    if certificate.witness is not None:
        rows.append(["witness weight", str(sum(certificate.witness))])
    if certificate.expanded is not None:
        rows.append(["witness n", str(certificate.expanded.n)])
    return rows


def cmd_check(certifier: Certifier, args: argparse.Namespace) -> int:
    digit_set = _digit_set(args)
    initial, transform = _initial(args.initial)
    admissible, certificate = certifier.check(
        digit_set, args.k, method=Method(args.method), initial=initial, transform=transform
    )

    if args.format == "json":
        print(
            json.dumps(
                {
                    "digits": list(digit_set.digits),
                    "m": digit_set.m,
                    "k": args.k,
                    "admissible": admissible,
                    "certificate": certificate.model_dump(mode="json"),
                },
                indent=2,
            )
        )
    else:
        print(tabulate(_summary(digit_set, args.k, admissible, certificate), tablefmt="plain"))

    if args.dump_matrix:
        system = build_system(digit_set, args.k)
        print(initial_matrix(system, initial or InitialMatrix.A, transform).to_text())
    if args.dump_trace and certificate.trace is not None:
        print(certificate.trace.to_text())

    if admissible is None:
        return EXIT_INCONCLUSIVE
    return EXIT_ADMISSIBLE if admissible else EXIT_NOT_ADMISSIBLE


def cmd_witness(certifier: Certifier, args: argparse.Namespace) -> int:
    digit_set = _digit_set(args)
    document = certifier.witness(digit_set, args.k, minimize=args.minimize or None)
    if document is None:
        print(f"{digit_set.notation()} mod {digit_set.m} is admissible for k={args.k}")
        return EXIT_ADMISSIBLE
    if not args.emit_vectors:
        document.vectors = None
    print(document.model_dump_json(indent=2, exclude_none=True))
    return EXIT_NOT_ADMISSIBLE


def _search_overrides(args: argparse.Namespace) -> dict:
    return {
        "jobs": args.jobs,
        "budget": args.budget,
        "use_symmetry": args.symmetry or None,
        "allow_composite": args.composite or None,
    }


def _open_cache(certifier: Certifier, args: argparse.Namespace):
    if args.cache is not None:
        certifier.open_cache(args.cache)


def _render_report(report: SearchReport, fmt: str) -> str:
    if fmt == "json":
        return report.model_dump_json(indent=2)
    if fmt == "csv":
        return render_table([report], "csv")
    breakdown = report.method_breakdown
    rows = [
        ["p", report.p],
        ["k", report.k],
        ["max size", report.cell],
        ["count at max", report.count_at_max if report.count_at_max is not None else "-"],
        ["first set", report.first_set.notation()],
        ["reduce-A / reduce-RREF / LP", f"{breakdown.reduce_a} / {breakdown.reduce_rref} / {breakdown.lp}"],
        ["witnesses", breakdown.witness],
        ["cached / pruned", f"{breakdown.cached} / {breakdown.pruned}"],
        ["elapsed", f"{report.elapsed:.2f}s"],
    ]
    return tabulate(rows, tablefmt="plain")


def cmd_search(certifier: Certifier, args: argparse.Namespace) -> int:
    _open_cache(certifier, args)
    report = certifier.search(
        args.p, args.k, count=args.count, revalidate=args.revalidate or None, **_search_overrides(args)
    )
    print(_render_report(report, args.format))
    return EXIT_ADMISSIBLE


def cmd_bound(certifier: Certifier, args: argparse.Namespace) -> int:
    report = certifier.bound(args.m, args.k, args.n)
    if args.format == "json":
        print(report.model_dump_json(indent=2))
        return EXIT_ADMISSIBLE
    rows = [
        ["construction", report.construction.notation()],
        ["|D|", report.construction.size],
        ["exact |S(D, n)|", report.exact_size],
        ["Lin-Wolf", report.lin_wolf if report.lin_wolf is not None else "-"],
        ["k=3 base", report.ep_r3 if report.ep_r3 is not None else "-"],
    ]
    if report.theorem is not None:
        rows.append(
            ["exponential bound", f"{report.theorem.base}^n / n^{report.theorem.denominator_exponent}"]
        )
    rows.extend(["note", note] for note in report.notes)
    print(tabulate(rows, tablefmt="plain"))
    return EXIT_ADMISSIBLE


def cmd_table(certifier: Certifier, args: argparse.Namespace) -> int:
    _open_cache(certifier, args)
    reports = certifier.table(
        parse_digit_spec(args.p), parse_digit_spec(args.k), **_search_overrides(args)
    )
    print(render_table(reports, args.format))
    if not args.diff:
        return EXIT_ADMISSIBLE

    failures = 0
    for report in reports:
        expected = find_expectation(report.p, report.k)
        if expected is None:
            print(f"p={report.p} k={report.k}: no expected row")
            continue
        check = check_row(expected, report)
        for diff in check.diffs:
            failures += 1
            print(f"p={report.p} k={report.k}: {diff}")
    print(f"{failures} diffs")
    return EXIT_DIFFS if failures else EXIT_ADMISSIBLE


def cmd_conjecture(certifier: Certifier, args: argparse.Namespace) -> int:
    digit_set, admissible, certificate = certifier.conjecture(args.p)
    print(tabulate(_summary(digit_set, 4, admissible, certificate), tablefmt="plain"))
    return EXIT_ADMISSIBLE if admissible else EXIT_NOT_ADMISSIBLE


def _add_search_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes")
    parser.add_argument("--budget", type=float, default=None, help="Wall-clock seconds per (p, k)")
    parser.add_argument("--cache", type=Path, default=None, help="Verdict cache file (JSON lines)")
    parser.add_argument("--symmetry", action="store_true", help="Prune with affine images")
    parser.add_argument("--composite", action="store_true", help="Allow non-prime moduli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apfree", description="Certify progression-free digit sets modulo m."
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="Decide admissibility of a digit set")
    _add_digit_arguments(check)
    check.add_argument("--method", choices=[m.value for m in Method], default=Method.AUTO.value)
    check.add_argument("--initial", default=None, help="A, rref or custom:FILE")
    check.add_argument("--dump-matrix", action="store_true", help="Print the starting matrix")
    check.add_argument("--dump-trace", action="store_true", help="Print the reduction trace")
    check.add_argument("--format", choices=["text", "json"], default="text")
    check.set_defaults(handler=cmd_check)

    witness = commands.add_parser("witness", help="Emit a progression for a non-admissible set")
    _add_digit_arguments(witness)
    witness.add_argument("--emit-vectors", action="store_true", help="Include the k vectors")
    witness.add_argument("--minimize", action="store_true", help="Shrink the witness support")
    witness.set_defaults(handler=cmd_witness)

    search = commands.add_parser("search", help="Largest admissible digit sets modulo p")
    search.add_argument("--p", type=int, required=True)
    search.add_argument("--k", type=int, required=True)
    search.add_argument(
        "--count", action=argparse.BooleanOptionalAction, default=True, help="Count sets at max size"
    )
    search.add_argument("--revalidate", action="store_true", help="Recheck certificates at max size")
    search.add_argument("--format", choices=["text", "csv", "json"], default="text")
    _add_search_arguments(search)
    search.set_defaults(handler=cmd_search)

    bound = commands.add_parser("bound", help="Constructions and lower bounds")
    bound.add_argument("--m", type=int, required=True)
    bound.add_argument("--k", type=int, required=True)
    bound.add_argument("--n", type=int, required=True)
    bound.add_argument("--format", choices=["text", "json"], default="text")
    bound.set_defaults(handler=cmd_bound)

    table = commands.add_parser("table", help="Regenerate the maximum-size table")
    table.add_argument("--p", default="5:13", help="Moduli, e.g. 5:13 or 5,7,11")
    table.add_argument("--k", default="3:8", help="Progression lengths, e.g. 3:8")
    table.add_argument("--diff", action="store_true", help="Compare with the bundled expectations")
    table.add_argument("--format", choices=["text", "csv", "json"], default="text")
    _add_search_arguments(table)
    table.set_defaults(handler=cmd_table)

    conjecture = commands.add_parser("conjecture", help="Check the candidate set for k=4")
    conjecture.add_argument("--p", type=int, required=True)
    conjecture.set_defaults(handler=cmd_conjecture)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_ADMISSIBLE

    try:
        settings = Settings() if args.log_level is None else Settings(LOG_LEVEL=args.log_level)
        certifier = Certifier(settings)
        return args.handler(certifier, args)
    except APFreeError as e:
        logger.error(f"[CLI] {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        logger.error(f"[CLI] Invalid option: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
