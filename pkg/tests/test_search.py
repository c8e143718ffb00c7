import json

import pytest

from apfree_py.engine.bounds import construct_conjecture, construction_for
from apfree_py.engine.feasex import Method, check_admissible
from apfree_py.exceptions import ConfigurationError, PreconditionError
from apfree_py.models.certificates import CertificateKind, InitialMatrix, Outcome
from apfree_py.models.digits import DigitSet
from apfree_py.models.reports import ExpectationStatus, SearchReport
from apfree_py.search import (
    CachedVerdict,
    SearchOptions,
    VerdictCache,
    affine_orbit_count,
    collect_admissible,
    load_expectations,
    render_table,
    search_all_admissible,
    search_max,
    verify_table_row,
)
from apfree_py.search.tables import check_row, compare_report, find_expectation

SMALL_ROWS = [(p, k) for p in (5, 7) for k in range(3, 9)]


def _report(p, k, size, complete=True, count=None):
    return SearchReport(
        p=p,
        k=k,
        max_size=size,
        count_at_max=count,
        first_set=DigitSet.from_interval(p, 0, size - 1),
        elapsed=0.0,
        complete=complete,
    )


@pytest.mark.parametrize(("p", "k"), SMALL_ROWS)
def test_search_reproduces_small_rows(p, k):
    expected = find_expectation(p, k)
    report = search_max(p, k)
    assert report.complete
    assert report.max_size == expected.max_size
    assert report.count_at_max == expected.count
    assert report.first_set == DigitSet.parse(p, expected.first_set)


@pytest.mark.parametrize(("p", "k"), [(5, 3), (5, 4), (7, 3), (7, 4), (7, 6)])
def test_pruned_search_matches_unpruned_enumeration(p, k):
    pruned = search_max(p, k)
    full = search_all_admissible(p, k)
    assert (pruned.max_size, pruned.count_at_max, pruned.first_set) == (
        full.max_size,
        full.count_at_max,
        full.first_set,
    )


def test_every_set_is_admissible_when_k_exceeds_p():
    report = search_max(5, 6)
    assert report.max_size == 5
    assert report.count_at_max == 1
    assert report.method_breakdown.witness == 0


def test_search_rejects_bad_moduli():
    with pytest.raises(PreconditionError):
        search_max(7, 2)
    with pytest.raises(PreconditionError):
        search_max(6, 3)
    with pytest.raises(PreconditionError):
        search_all_admissible(1, 3)


def test_composite_modulus_on_request():
    options = SearchOptions(allow_composite=True)
    pruned = search_max(6, 3, options)
    full = search_all_admissible(6, 3, allow_composite=True)
    assert pruned.max_size == full.max_size
    assert pruned.count_at_max == full.count_at_max


def test_count_can_be_skipped():
    report = search_max(7, 3, SearchOptions(count=False))
    assert report.max_size == 4
    assert report.count_at_max is None


def test_cache_replays_every_verdict(tmp_path):
    path = tmp_path / "verdicts.jsonl"
    first = search_max(7, 3, cache=VerdictCache(path))
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines
    assert all(CachedVerdict.model_validate_json(line).m == 7 for line in lines)

    reloaded = VerdictCache(path)
    assert len(reloaded) == len(lines)
    second = search_max(7, 3, cache=reloaded)
    assert (second.max_size, second.count_at_max) == (first.max_size, first.count_at_max)
    breakdown = second.method_breakdown
    assert breakdown.cached == len(lines)
    # replayed verdicts keep the certificate type they were decided by
    methods = ("reduce_a", "reduce_rref", "lp", "witness")
    assert [getattr(breakdown, name) for name in methods] == [
        getattr(first.method_breakdown, name) for name in methods
    ]
    assert sum(getattr(breakdown, name) for name in methods) == len(lines)
    # nothing new to append
    assert path.read_text(encoding="utf-8").splitlines() == lines


def test_cache_skips_torn_lines_and_separates_keys(tmp_path):
    path = tmp_path / "verdicts.jsonl"
    good = CachedVerdict(m=7, k=3, digits="0,1,2", admissible=True, kind=CertificateKind.REDUCE_A)
    path.write_text(good.model_dump_json() + "\n" + '{"m": 7, "k"\n', encoding="utf-8")
    cache = VerdictCache(path)
    assert len(cache) == 1
    assert cache.get(7, 3, "0,1,2") == good
    assert cache.get(7, 4, "0,1,2") is None
    assert cache.snapshot(7, 3) == {"0,1,2": good}
    assert cache.snapshot(11, 3) == {}

    cache.put(good)
    cache.put(CachedVerdict(m=7, k=4, digits="0,1,2", admissible=True, kind=CertificateKind.REDUCE_A))
    assert len(cache) == 2
    assert len(path.read_text(encoding="utf-8").splitlines()) == 3


def test_in_memory_cache():
    cache = VerdictCache()
    search_max(5, 3, cache=cache)
    assert len(cache) > 0
    assert cache.path is None


def test_budget_exhaustion_gives_lower_bound():
    report = search_max(7, 3, SearchOptions(budget=1e-9))
    assert not report.complete
    assert report.cell.startswith(">=")


def test_symmetry_reduction_keeps_the_result():
    plain = search_max(7, 4)
    reduced = search_max(7, 4, SearchOptions(use_symmetry=True))
    assert (reduced.max_size, reduced.count_at_max, reduced.first_set) == (
        plain.max_size,
        plain.count_at_max,
        plain.first_set,
    )
    assert reduced.method_breakdown.cached > 0


def test_revalidation():
    report = search_max(7, 3, SearchOptions(revalidate=True))
    assert report.revalidated is True
    assert search_max(7, 3).revalidated is None


def test_worker_processes_agree_with_inline_search():
    inline = search_max(7, 3)
    pooled = search_max(7, 3, SearchOptions(jobs=2))
    assert (pooled.max_size, pooled.count_at_max, pooled.first_set) == (
        inline.max_size,
        inline.count_at_max,
        inline.first_set,
    )


def test_affine_orbits_of_four_subsets_mod_7():
    sets = collect_admissible(7, 3, 4)
    assert len(sets) == 35
    assert sets[0].digits == (0, 1, 2, 3)

    stats = affine_orbit_count(7, 3, 4)
    assert stats.total_sets == 35
    assert stats.orbit_count == 2
    assert stats.orbit_sizes == [21, 14]
    assert [r.digits for r in stats.representatives] == [(0, 1, 2, 3), (0, 1, 2, 4)]
    assert collect_admissible(7, 3, 5) == []


def test_render_table_formats():
    reports = [_report(5, 3, 3), _report(5, 4, 3), _report(7, 3, 4, complete=False)]
    assert render_table(reports, "csv") == "p,3,4\n5,3,3\n7,>=4,\n"

    text = render_table(reports)
    assert "k=3" in text and "k=4" in text
    assert ">=4" in text

    parsed = json.loads(render_table(reports, "json"))
    assert [row["max_size"] for row in parsed] == [3, 3, 4]

    with pytest.raises(ConfigurationError):
        render_table(reports, "xml")


def test_expectations_file():
    rows = load_expectations()
    assert len(rows) == 54
    odd = find_expectation(29, 6)
    assert odd.status is ExpectationStatus.UNVERIFIABLE
    assert odd.lower_bound
    starred = find_expectation(17, 7)
    assert starred.starred and starred.max_size == 15
    assert find_expectation(3, 3) is None


def test_compare_report():
    exact = find_expectation(7, 3)
    assert compare_report(exact, _report(7, 3, 4, count=35)) == []
    assert compare_report(exact, _report(7, 3, 3)) == ["max size 3 != expected 4"]
    assert compare_report(exact, _report(7, 3, 4, count=30)) == ["count 30 != expected 35"]

    bound = find_expectation(23, 3)
    assert compare_report(bound, _report(23, 3, 12)) == []
    assert compare_report(bound, _report(23, 3, 13)) == []
    assert compare_report(bound, _report(23, 3, 11)) != []
    # an unfinished search never contradicts the table
    assert compare_report(exact, _report(7, 3, 2, complete=False)) == []


def test_check_row_flags_bad_first_sets():
    expected = find_expectation(7, 3)
    malformed = expected.model_copy(update={"first_set": "0:15,25:17"})
    check = check_row(malformed, _report(7, 3, 4, count=35))
    assert not check.passed
    assert "malformed" in check.diffs[0]

    crowded = expected.model_copy(update={"first_set": "0:4", "max_size": 5})
    check = check_row(crowded, _report(7, 3, 5))
    assert "first set [0,4] is not admissible" in check.diffs

    unverifiable = find_expectation(29, 6)
    assert check_row(unverifiable, _report(29, 6, 22, complete=False)).passed
    oversized = unverifiable.model_copy(update={"first_set": "0:25,27:26"})
    check = check_row(oversized, _report(29, 6, 22, complete=False))
    assert not check.passed
    assert "26 readable digits, expected 22" in check.diffs[0]


def test_verify_table_row():
    check = verify_table_row(7, 4)
    assert check.passed
    assert check.report is not None and check.report.max_size == 5
    with pytest.raises(ConfigurationError):
        verify_table_row(3, 3)


CONSTRUCTION_ROWS = [row for row in load_expectations() if row.construction_size is not None]


@pytest.mark.parametrize("expected", CONSTRUCTION_ROWS, ids=lambda row: f"{row.p}-{row.k}")
def test_construction_sizes_match_the_table(expected):
    digit_set, _ = construction_for(expected.p, expected.k)
    assert digit_set.size == expected.construction_size
    assert digit_set.size <= expected.max_size


@pytest.mark.slow
@pytest.mark.parametrize(
    "expected", [row for row in CONSTRUCTION_ROWS if row.p <= 13], ids=lambda row: f"{row.p}-{row.k}"
)
def test_constructions_are_admissible(expected):
    digit_set, _ = construction_for(expected.p, expected.k)
    admissible, certificate = check_admissible(digit_set, expected.k, expand=False)
    assert admissible is True
    assert certificate.admissible is True


@pytest.mark.slow
@pytest.mark.parametrize(
    ("p", "k"), [(11, k) for k in range(3, 9)] + [(13, k) for k in range(3, 9)]
)
def test_search_reproduces_larger_rows(p, k):
    assert verify_table_row(p, k).passed


@pytest.mark.slow
def test_starred_row_first_set():
    starred = DigitSet.from_interval(17, 0, 14)
    for initial in (InitialMatrix.A, InitialMatrix.RREF):
        verdict, certificate = check_admissible(
            starred, 7, method=Method.REDUCE, initial=initial, expand=False
        )
        assert verdict is None
        assert certificate.trace is not None and certificate.trace.outcome is Outcome.STUCK

    admissible, certificate = check_admissible(starred, 7, expand=False)
    assert admissible is True
    assert certificate.kind is CertificateKind.LP
    assert certificate.lp_optimum == 0


@pytest.mark.slow
@pytest.mark.parametrize("p", [13, 17])
def test_conjecture_candidates_are_admissible(p):
    admissible, certificate = check_admissible(construct_conjecture(p), 4, expand=False)
    assert admissible is True
    assert certificate.admissible is True


@pytest.mark.slow
def test_conjecture_candidate_verdict_is_recorded():
    # no table row settles p = 29, so only the certificate's consistency is checked
    admissible, certificate = check_admissible(construct_conjecture(29), 4, expand=False)
    assert admissible is not None
    assert certificate.admissible is admissible
    if admissible:
        assert certificate.kind is not CertificateKind.WITNESS
    else:
        assert certificate.kind is CertificateKind.WITNESS
        assert certificate.witness is not None
