"""Main entry point tying settings, checker, search and bounds together."""

import logging
from collections.abc import Iterable
from pathlib import Path

from .config import Settings, setup_logging
from .engine.bounds import bound_report, construct_conjecture
from .engine.constraints import ConeApAgreement, build_system, kernel_cone_is_equivalent_to_ap
from .engine.feasex import Method, check_admissible, expand_witness, witness_document
from .engine.oracle import bounded_integer_kernel
from .engine.ratlin import RatMatrix
from .engine.zmod import is_prime
from .models.certificates import Certificate, InitialMatrix, WitnessDocument
from .models.digits import DigitSet
from .models.reports import BoundReport, RowCheck, SearchReport
from .search.cache import VerdictCache
from .search.runner import SearchOptions, search_max
from .search.tables import verify_table_row

logger = logging.getLogger(__name__)


class Certifier:
    """Admissibility checker, search driver and bound calculator.

    This is the primary entry point. Defaults for caps, parallelism and the
    verdict cache come from Settings (APFREE_* environment variables).
    """

    def __init__(self, settings: Settings | None = None, **kwargs):
        """Initialize the certifier.

        Args:
            settings: Optional settings configuration
            **kwargs: Additional arguments passed to Settings
        """
        if settings is None:
            settings = Settings(**kwargs)
        self.settings = settings
        setup_logging(settings.LOG_LEVEL)

        self._cache: VerdictCache | None = None
        logger.info("Certifier initialized")

    @property
    def cache(self) -> VerdictCache:
        """Verdict cache, opened on first use."""
        if self._cache is None:
            self._cache = VerdictCache(self.settings.CACHE_PATH)
        return self._cache

    def open_cache(self, path: Path):
        """Switch to a verdict cache file other than CACHE_PATH."""
        self._cache = VerdictCache(path)

    def check(
        self,
        digit_set: DigitSet,
        k: int,
        method: Method = Method.AUTO,
        initial: InitialMatrix | None = None,
        transform: RatMatrix | None = None,
    ) -> tuple[bool | None, Certificate]:
        """Decide admissibility of D for k-term progressions.

        Returns:
            (admissible, certificate); admissible is None only for an
            inconclusive Method.REDUCE run
        """
        admissible, certificate = check_admissible(
            digit_set,
            k,
            method=method,
            minimize=self.settings.MINIMIZE_WITNESS,
            initial=initial,
            transform=transform,
        )
        logger.info(f"[Check] {digit_set.notation()} mod {digit_set.m}, k={k}: {certificate.kind}")
        return admissible, certificate

    def witness(
        self, digit_set: DigitSet, k: int, minimize: bool | None = None
    ) -> WitnessDocument | None:
        """Explicit progression inside some S(D, n), or None if D is admissible."""
        if minimize is None:
            minimize = self.settings.MINIMIZE_WITNESS
        admissible, certificate = check_admissible(
            digit_set, k, method=Method.LP, minimize=minimize
        )
        if admissible or certificate.witness is None:
            return None
        system = build_system(digit_set, k)
        expanded = certificate.expanded or expand_witness(system, certificate.witness)
        return witness_document(system, certificate.witness, expanded)

    def search_options(self, **overrides) -> SearchOptions:
        values = {
            "budget": self.settings.SEARCH_BUDGET,
            "jobs": self.settings.SEARCH_JOBS,
            "use_symmetry": self.settings.USE_SYMMETRY,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return SearchOptions(**values)

    def search(self, p: int, k: int, **overrides) -> SearchReport:
        """Largest admissible digit sets modulo p; overrides go to SearchOptions."""
        return search_max(p, k, self.search_options(**overrides), self.cache)

    def table(self, ps: Iterable[int], ks: Iterable[int], **overrides) -> list[SearchReport]:
        """Search every (p, k) cell; non-prime moduli are skipped."""
        options = self.search_options(**overrides)
        reports = []
        for p in ps:
            if not is_prime(p) and not options.allow_composite:
                logger.debug(f"[Tables] Skipping non-prime {p}")
                continue
            for k in ks:
                reports.append(search_max(p, k, options, self.cache))
        return reports

    def verify_row(self, p: int, k: int, **overrides) -> RowCheck:
        return verify_table_row(p, k, options=self.search_options(**overrides), cache=self.cache)

    def bound(self, m: int, k: int, n: int) -> BoundReport:
        return bound_report(m, k, n)

    def conjecture(self, p: int) -> tuple[DigitSet, bool | None, Certificate]:
        """Build the candidate 4-progression-free set for p and run the checker on it."""
        digit_set = construct_conjecture(p)
        admissible, certificate = self.check(digit_set, 4)
        return digit_set, admissible, certificate

    def agreement(self, digit_set: DigitSet, k: int, n: int | None = None) -> ConeApAgreement:
        """Cross-check the cone verdict against brute force, capped by ORACLE_CAP."""
        return kernel_cone_is_equivalent_to_ap(digit_set, k, n, cap=self.settings.ORACLE_CAP)

    def small_witness(self, digit_set: DigitSet, k: int) -> tuple[int, ...] | None:
        """Minimum-weight kernel vector up to KERNEL_WEIGHT_CAP."""
        return bounded_integer_kernel(build_system(digit_set, k), self.settings.KERNEL_WEIGHT_CAP)

    def __repr__(self) -> str:
        """String representation of the certifier."""
        cache = self.settings.CACHE_PATH or "memory"
        return (
            f"Certifier(jobs={self.settings.SEARCH_JOBS}, "
            f"budget={self.settings.SEARCH_BUDGET}, cache='{cache}')"
        )
