"""Expected-value tables: loading, verification and rendering."""

import csv
import io
import json
import logging
from collections.abc import Iterable
from importlib import resources

from tabulate import tabulate

from ..engine.feasex import check_admissible
from ..exceptions import ConfigurationError, InvalidDigitSetError
from ..misc.helpers import parse_digit_spec
from ..models.digits import DigitSet
from ..models.reports import ExpectationStatus, RowCheck, SearchReport, TableExpectation
from .cache import VerdictCache
from .runner import SearchOptions, search_max

logger = logging.getLogger(__name__)

EXPECTATIONS_FILE = "expected_tables.csv"
FORMATS = ("text", "csv", "json")


def load_expectations() -> list[TableExpectation]:
    """Rows of the bundled expected-values file, ordered by (k, p)."""
    source = resources.files("apfree_py.data").joinpath(EXPECTATIONS_FILE)
    rows = []
    with source.open("r", encoding="utf-8") as handle:
        for raw in csv.DictReader(handle):
            rows.append(
                TableExpectation(
                    p=int(raw["p"]),
                    k=int(raw["k"]),
                    max_size=int(raw["max_size"]),
                    lower_bound=raw["lower_bound"] == "true",
                    count=int(raw["count"]) if raw["count"] else None,
                    first_set=raw["first_set"],
                    initial=raw["initial"],
                    starred=raw["starred"] == "true",
                    construction_size=(
                        int(raw["construction_size"]) if raw["construction_size"] else None
                    ),
                    status=ExpectationStatus(raw["status"]),
                )
            )
    logger.debug(f"[Tables] Loaded {len(rows)} expected rows")
    return rows


def find_expectation(p: int, k: int) -> TableExpectation | None:
    for row in load_expectations():
        if row.p == p and row.k == k:
            return row
    return None


def _check_printed_size(expected: TableExpectation, diffs: list[str]):
    """Size arithmetic for a first set whose printed form has malformed parts."""
    recovered: set[int] = set()
    malformed = 0
    for part in expected.first_set.split(","):
        try:
            recovered.update(parse_digit_spec(part))
        except InvalidDigitSetError:
            malformed += 1
    missing = expected.max_size - len(recovered)
    if missing < 0 or (not malformed and missing):
        diffs.append(
            f"first set {expected.first_set!r} has {len(recovered)} readable digits, "
            f"expected {expected.max_size}"
        )
    else:
        logger.debug(
            f"[Tables] p={expected.p} k={expected.k}: {malformed} malformed parts "
            f"account for {missing} of {expected.max_size} digits"
        )


def _check_first_set(expected: TableExpectation, diffs: list[str]):
    if expected.status is ExpectationStatus.UNVERIFIABLE:
        # the printed set contains an empty interval; only its size claim is checked
        _check_printed_size(expected, diffs)
        return

    digit_set = DigitSet.parse(expected.p, expected.first_set)
    if digit_set.size != expected.max_size:
        diffs.append(
            f"first set {digit_set.notation()} has {digit_set.size} digits, "
            f"expected {expected.max_size}"
        )
    admissible, _ = check_admissible(digit_set, expected.k, expand=False)
    if not admissible:
        diffs.append(f"first set {digit_set.notation()} is not admissible")


def compare_report(expected: TableExpectation, report: SearchReport) -> list[str]:
    """Differences between a search report and an expected row."""
    diffs: list[str] = []
    if expected.lower_bound or not report.complete:
        if report.complete and report.max_size < expected.max_size:
            diffs.append(f"max size {report.max_size} below printed bound {expected.max_size}")
    elif report.max_size != expected.max_size:
        diffs.append(f"max size {report.max_size} != expected {expected.max_size}")

    if (
        expected.count is not None
        and report.count_at_max is not None
        and report.complete
        and report.max_size == expected.max_size
        and report.count_at_max != expected.count
    ):
        diffs.append(f"count {report.count_at_max} != expected {expected.count}")
    return diffs


def verify_table_row(
    p: int,
    k: int,
    expected: TableExpectation | None = None,
    options: SearchOptions | None = None,
    cache: VerdictCache | None = None,
) -> RowCheck:
    """Search (p, k) and compare max size, count and first-set admissibility."""
    expected = expected or find_expectation(p, k)
    if expected is None:
        raise ConfigurationError(f"No expected row for p={p}, k={k}")

    report = search_max(p, k, options, cache)
    return check_row(expected, report)


def check_row(expected: TableExpectation, report: SearchReport) -> RowCheck:
    """Compare an existing search report with its expected row."""
    p, k = report.p, report.k
    diffs: list[str] = []
    try:
        _check_first_set(expected, diffs)
    except InvalidDigitSetError as e:
        diffs.append(f"first set '{expected.first_set}' is malformed: {e}")
    diffs.extend(compare_report(expected, report))
    check = RowCheck(p=p, k=k, passed=not diffs, diffs=diffs, report=report)
    if diffs:
        logger.warning(f"[Tables] p={p}, k={k}: {'; '.join(diffs)}")
    else:
        logger.info(f"[Tables] p={p}, k={k}: matches")
    return check


def render_table(reports: Iterable[SearchReport], fmt: str = "text") -> str:
    """Grid of max sizes, primes down and progression lengths across.

    Truncated searches show `>=size`. JSON lists the full reports instead.
    """
    reports = list(reports)
    if fmt not in FORMATS:
        raise ConfigurationError(f"Unknown table format '{fmt}', expected one of {FORMATS}")
    if fmt == "json":
        return json.dumps([report.model_dump(mode="json") for report in reports], indent=2)

    ps = sorted({report.p for report in reports})
    ks = sorted({report.k for report in reports})
    cells = {(report.p, report.k): report.cell for report in reports}
    headers = ["p", *(f"k={k}" for k in ks)]
    rows = [[p, *(cells.get((p, k), "") for k in ks)] for p in ps]

    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["p", *ks])
        writer.writerows(rows)
        return buffer.getvalue()
    return tabulate(rows, headers=headers, tablefmt="github")
