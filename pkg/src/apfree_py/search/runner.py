"""Exhaustive search for maximum admissible digit sets modulo p."""

import logging
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor, as_completed
from itertools import combinations

from pydantic import BaseModel, Field

from ..engine.constraints import build_system
from ..engine.feasex import check_admissible, decide_cone
from ..engine.reduce import verify_trace
from ..engine.zmod import canonical_affine_form, is_prime
from ..exceptions import PreconditionError
from ..models.certificates import CertificateKind
from ..models.digits import DigitSet
from ..models.reports import MethodBreakdown, OrbitStats, SearchReport
from .cache import CachedVerdict, VerdictCache

logger = logging.getLogger(__name__)


class SearchOptions(BaseModel):
    """Knobs for one search run."""

    budget: float | None = Field(None, gt=0, description="Wall-clock seconds")
    jobs: int = Field(1, ge=1)
    count: bool = True
    use_symmetry: bool = False
    revalidate: bool = False
    allow_composite: bool = False


class _SubtreeTask(BaseModel):
    """All sets whose least element is `first`."""

    m: int
    k: int
    first: int
    deadline: float | None = None
    use_symmetry: bool = False
    revalidate: bool = False
    collect_size: int | None = None
    snapshot: dict[str, CachedVerdict] = Field(default_factory=dict)


class _SubtreeResult(BaseModel):
    first: int
    max_size: int
    count: int
    first_set: tuple[int, ...]
    breakdown: MethodBreakdown
    fresh: list[CachedVerdict] = Field(default_factory=list)
    collected: list[tuple[int, ...]] = Field(default_factory=list)
    complete: bool = True
    revalidated: bool | None = None


def _text(digits: tuple[int, ...]) -> str:
    return ",".join(map(str, digits))


def _tally(breakdown: MethodBreakdown, kind: CertificateKind | str):
    match CertificateKind(kind):
        case CertificateKind.REDUCE_A:
            breakdown.reduce_a += 1
        case CertificateKind.REDUCE_RREF | CertificateKind.REDUCE_CUSTOM:
            breakdown.reduce_rref += 1
        case CertificateKind.LP:
            breakdown.lp += 1
        case CertificateKind.WITNESS:
            breakdown.witness += 1


def _revalidate(digit_set: DigitSet, k: int) -> bool:
    """Re-derive the certificate of a set and check it independently."""
    admissible, certificate = check_admissible(digit_set, k, expand=False)
    if not admissible:
        return False
    system = build_system(digit_set, k)
    if certificate.trace is not None:
        return verify_trace(system, certificate.trace)
    return decide_cone(system).trivial


class _SubtreeWalker:
    """Depth-first walk in lexicographic order, extending admissible sets only.

    Admissibility is inherited by subsets, so every admissible set is reached
    through its chain of admissible prefixes and visited exactly once.
    """

    def __init__(self, task: _SubtreeTask, memo: dict[tuple[int, ...], bool] | None = None):
        self.task = task
        self.memo = memo if memo is not None else {}
        self.breakdown = MethodBreakdown()
        self.fresh: list[CachedVerdict] = []
        self.collected: list[tuple[int, ...]] = []
        self.best_size = 0
        self.best_count = 0
        self.best_first: tuple[int, ...] = ()
        self.best_sets: list[tuple[int, ...]] = []
        self.complete = True

    def _key(self, digits: tuple[int, ...]) -> tuple[int, ...]:
        if not self.task.use_symmetry:
            return digits
        return canonical_affine_form(DigitSet(m=self.task.m, digits=digits)).digits

    def _known(
        self, digits: tuple[int, ...], key: tuple[int, ...]
    ) -> tuple[bool, CertificateKind | None] | None:
        """Verdict from the memo or the cache snapshot, with the stored kind if any."""
        if key in self.memo:
            return self.memo[key], None
        for text in {_text(digits), _text(key)}:
            cached = self.task.snapshot.get(text)
            if cached is not None:
                return cached.admissible, cached.kind
        return None

    def _verdict(self, digits: tuple[int, ...]) -> bool:
        key = self._key(digits)
        known = self._known(digits, key)
        if known is not None:
            verdict, kind = known
            self.breakdown.cached += 1
            if kind is not None:
                _tally(self.breakdown, kind)
            self.memo[key] = verdict
            return verdict

        # the facet without the last element is the admissible parent
        for i in range(len(digits) - 1):
            facet = digits[:i] + digits[i + 1 :]
            if self.memo.get(self._key(facet)) is False:
                self.breakdown.pruned += 1
                self.memo[key] = False
                return False

        admissible, certificate = check_admissible(
            DigitSet(m=self.task.m, digits=digits), self.task.k, expand=False
        )
        verdict = bool(admissible)
        _tally(self.breakdown, certificate.kind)
        self.memo[key] = verdict
        self.fresh.append(
            CachedVerdict(
                m=self.task.m,
                k=self.task.k,
                digits=_text(digits),
                admissible=verdict,
                kind=certificate.kind,
            )
        )
        return verdict

    def _record(self, digits: tuple[int, ...]):
        size = len(digits)
        if size == self.task.collect_size:
            self.collected.append(digits)
        if size > self.best_size:
            self.best_size, self.best_count, self.best_first = size, 1, digits
            self.best_sets = [digits]
        elif size == self.best_size:
            self.best_count += 1
            self.best_first = min(self.best_first, digits)
            if self.task.revalidate:
                self.best_sets.append(digits)

    def _expired(self) -> bool:
        return self.task.deadline is not None and time.time() > self.task.deadline

    def _visit(self, current: tuple[int, ...]):
        if self.task.collect_size is not None and len(current) >= self.task.collect_size:
            return
        for x in range(current[-1] + 1, self.task.m):
            if self._expired():
                self.complete = False
                return
            candidate = (*current, x)
            if self._verdict(candidate):
                self._record(candidate)
                self._visit(candidate)

    def walk(self) -> _SubtreeResult:
        root = (self.task.first,)
        # a single digit carries no non-constant progression
        self._record(root)
        self._visit(root)

        revalidated = None
        if self.task.revalidate:
            revalidated = all(
                _revalidate(DigitSet(m=self.task.m, digits=digits), self.task.k)
                for digits in self.best_sets
            )
        return _SubtreeResult(
            first=self.task.first,
            max_size=self.best_size,
            count=self.best_count,
            first_set=self.best_first,
            breakdown=self.breakdown,
            fresh=self.fresh,
            collected=self.collected,
            complete=self.complete,
            revalidated=revalidated,
        )


def _search_subtree(task: _SubtreeTask) -> _SubtreeResult:
    return _SubtreeWalker(task).walk()


def _check_modulus(p: int, k: int, allow_composite: bool):
    if k < 3:
        raise PreconditionError("k >= 3", f"k = {k} is below 3")
    if p < 2:
        raise PreconditionError("p >= 2", f"modulus {p} is below 2")
    if not allow_composite and not is_prime(p):
        raise PreconditionError("p prime", f"{p} is not prime; pass allow_composite")


def _run_tasks(tasks: list[_SubtreeTask], jobs: int) -> list[_SubtreeResult]:
    if jobs == 1:
        # largest first element first, so sets missing their least digit are already known
        memo: dict[tuple[int, ...], bool] = {}
        results = [_SubtreeWalker(task, memo).walk() for task in reversed(tasks)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_search_subtree, task) for task in tasks]
            results = [future.result() for future in as_completed(futures)]
    return sorted(results, key=lambda result: result.first)


def search_max(
    p: int,
    k: int,
    options: SearchOptions | None = None,
    cache: VerdictCache | None = None,
) -> SearchReport:
    """Largest admissible D in Z_p for k-term progressions.

    Subtrees keyed by their least digit are searched independently (in worker
    processes when jobs > 1); verdicts are appended to the cache by this
    process only, after the workers return.

    Args:
        p: Modulus, prime unless options.allow_composite
        k: Progression length
        options: Budget, parallelism and symmetry settings
        cache: Verdict cache read before and appended to after the run

    Returns:
        Search report; complete is False when the budget ran out
    """
    options = options or SearchOptions()
    _check_modulus(p, k, options.allow_composite)

    started = time.time()
    deadline = started + options.budget if options.budget is not None else None
    snapshot = cache.snapshot(p, k) if cache is not None else {}
    logger.info(
        f"[Search] p={p}, k={k}: jobs={options.jobs}, budget={options.budget}, "
        f"{len(snapshot)} cached verdicts"
    )

    tasks = [
        _SubtreeTask(
            m=p,
            k=k,
            first=first,
            deadline=deadline,
            use_symmetry=options.use_symmetry,
            revalidate=options.revalidate,
            snapshot=snapshot,
        )
        for first in range(p)
    ]
    results = _run_tasks(tasks, options.jobs)

    if cache is not None:
        for result in results:
            for verdict in result.fresh:
                cache.put(verdict)

    max_size = max(result.max_size for result in results)
    at_max = [result for result in results if result.max_size == max_size]
    breakdown = MethodBreakdown()
    for result in results:
        for field in MethodBreakdown.model_fields:
            setattr(breakdown, field, getattr(breakdown, field) + getattr(result.breakdown, field))

    report = SearchReport(
        p=p,
        k=k,
        max_size=max_size,
        count_at_max=sum(result.count for result in at_max) if options.count else None,
        first_set=DigitSet(m=p, digits=min(result.first_set for result in at_max)),
        method_breakdown=breakdown,
        elapsed=time.time() - started,
        complete=all(result.complete for result in results),
        revalidated=(
            all(bool(result.revalidated) for result in at_max) if options.revalidate else None
        ),
    )
    if not report.complete:
        logger.warning(f"[Search] p={p}, k={k}: budget exhausted, reporting >= {max_size}")
    logger.info(
        f"[Search] p={p}, k={k}: max size {report.cell}, "
        f"{report.count_at_max} sets, {report.elapsed:.1f}s"
    )
    return report


def search_all_admissible(p: int, k: int, allow_composite: bool = False) -> SearchReport:
    """Unpruned enumeration of every subset of Z_p; a check on the pruned search."""
    _check_modulus(p, k, allow_composite)
    started = time.time()
    breakdown = MethodBreakdown()
    best: list[tuple[int, ...]] = []
    for size in range(1, p + 1):
        found = []
        for digits in combinations(range(p), size):
            if size == 1:
                found.append(digits)
                continue
            admissible, certificate = check_admissible(
                DigitSet(m=p, digits=digits), k, expand=False
            )
            _tally(breakdown, certificate.kind)
            if admissible:
                found.append(digits)
        if found:
            best = found

    max_size = len(best[0])
    logger.debug(f"[Search] Unpruned p={p}, k={k}: {len(best)} sets of size {max_size}")
    return SearchReport(
        p=p,
        k=k,
        max_size=max_size,
        count_at_max=len(best),
        first_set=DigitSet(m=p, digits=min(best)),
        method_breakdown=breakdown,
        elapsed=time.time() - started,
        complete=True,
    )


def collect_admissible(p: int, k: int, size: int, allow_composite: bool = False) -> list[DigitSet]:
    """Every admissible digit set of exactly the given size, ascending."""
    _check_modulus(p, k, allow_composite)
    if size < 1:
        return []
    memo: dict[tuple[int, ...], bool] = {}
    collected: list[tuple[int, ...]] = []
    for first in reversed(range(p)):
        walker = _SubtreeWalker(_SubtreeTask(m=p, k=k, first=first, collect_size=size), memo)
        collected.extend(walker.walk().collected)
    return [DigitSet(m=p, digits=digits) for digits in sorted(collected)]


def affine_orbit_count(p: int, k: int, size: int, allow_composite: bool = False) -> OrbitStats:
    """Split the admissible sets of one size into orbits of x -> a·x + b."""
    sets = collect_admissible(p, k, size, allow_composite)
    orbits: dict[tuple[int, ...], int] = defaultdict(int)
    for digit_set in sets:
        orbits[canonical_affine_form(digit_set).digits] += 1
    representatives = sorted(orbits)
    return OrbitStats(
        p=p,
        k=k,
        size=size,
        total_sets=len(sets),
        orbit_count=len(orbits),
        orbit_sizes=sorted(orbits.values(), reverse=True),
        representatives=[DigitSet(m=p, digits=digits) for digits in representatives],
    )
