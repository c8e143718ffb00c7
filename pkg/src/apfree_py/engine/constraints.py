"""Homogeneous balance constraints for progressions of digit vectors."""

import logging
from enum import StrEnum
from itertools import combinations

from pydantic import BaseModel, ConfigDict

from ..exceptions import InvalidDigitSetError
from ..models.digits import DigitSet, Progression
from .ratlin import RatMatrix
from .zmod import enumerate_progressions

logger = logging.getLogger(__name__)


class PairScheme(StrEnum):
    """Which position pairs (i, j) contribute balance equations."""

    FIRST_TO_ALL = "first-to-all"
    ALL_PAIRS = "all-pairs"

    def pairs(self, k: int) -> list[tuple[int, int]]:
        """1-based position pairs with i < j."""
        if self is PairScheme.FIRST_TO_ALL:
            return [(1, j) for j in range(2, k + 1)]
        return list(combinations(range(1, k + 1), 2))


class ConstraintSystem(BaseModel):
    """Balance equations A·x = 0, one column per progression."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    digit_set: DigitSet
    k: int
    progressions: tuple[Progression, ...]
    pair_scheme: tuple[tuple[int, int], ...]
    matrix: RatMatrix

    @property
    def num_columns(self) -> int:
        return len(self.progressions)

    def row_label(self, row: int) -> tuple[int, tuple[int, int]]:
        """(digit, pair) that produced the given row."""
        size = self.digit_set.size
        return self.digit_set.digits[row % size], self.pair_scheme[row // size]

    def column_index(self, start: int, diff: int) -> int:
        for index, progression in enumerate(self.progressions):
            if progression.start == start and progression.diff == diff:
                return index
        raise KeyError(f"No progression ({start}, {diff}) in the system")

    def residual(self, x: list[int]) -> list[int]:
        """A·x for an integer vector, as integers."""
        return [int(v) for v in self.matrix.apply(x)]


def build_system(
    digit_set: DigitSet, k: int, scheme: PairScheme = PairScheme.FIRST_TO_ALL
) -> ConstraintSystem:
    """Build the balance system for D and progression length k.

    Rows are pair-major then digit ascending; columns follow the canonical
    (start, diff) progression order. Entry at row (d, (i, j)) and column v is
    [v_i = d] - [v_j = d]. Digits in no progression keep their all-zero rows.

    Args:
        digit_set: Digit set D
        k: Progression length
        scheme: Pair scheme, FIRST_TO_ALL by default

    Returns:
        The constraint system
    """
    if k < 3:
        raise InvalidDigitSetError(f"Progression length must be at least 3, got {k}")

    progressions = enumerate_progressions(digit_set, k)
    pairs = scheme.pairs(k)
    rows: list[list[int]] = []
    for i, j in pairs:
        for d in digit_set.digits:
            rows.append(
                [
                    int(v.terms[i - 1] == d) - int(v.terms[j - 1] == d)
                    for v in progressions
                ]
            )
    matrix = RatMatrix(len(rows), len(progressions), rows)
    logger.debug(
        f"[Constraints] {digit_set}, k={k}: {matrix.rows}x{matrix.cols} ({scheme})"
    )
    return ConstraintSystem(
        digit_set=digit_set,
        k=k,
        progressions=tuple(progressions),
        pair_scheme=tuple(pairs),
        matrix=matrix,
    )


class ConeApAgreement(BaseModel):
    """Outcome of checking both directions of the cone/progression equivalence."""

    cone_trivial: bool
    witness_expands_to_ap: bool | None = None
    ap_found: bool | None = None
    ap_projects_to_kernel: bool | None = None

    @property
    def consistent(self) -> bool:
        if self.witness_expands_to_ap is False or self.ap_projects_to_kernel is False:
            return False
        # a progression in some S(D, n) forces a nonzero cone vector
        return not (self.ap_found and self.cone_trivial)


def kernel_cone_is_equivalent_to_ap(
    digit_set: DigitSet, k: int, n: int | None = None, cap: int = 10_000_000
) -> ConeApAgreement:
    """Exercise both directions of the cone/progression equivalence.

    (a) a nonnegative nontrivial kernel vector expands to a verified progression
    in some S(D, n'); (b) a progression found by brute force in S(D, n)
    projects to a nonnegative nontrivial kernel vector.

    Args:
        digit_set: Digit set D
        k: Progression length
        n: Dimension for the brute-force side, |D| by default
        cap: Oracle materialization cap
    """
    # Imported here to avoid circular imports
    from .feasex import decide_cone, expand_witness, verify_expanded_witness
    from .oracle import find_ap_direct, project_ap

    system = build_system(digit_set, k)
    result = decide_cone(system)
    report = ConeApAgreement(cone_trivial=result.trivial)

    if result.witness is not None:
        expanded = expand_witness(system, result.witness)
        report.witness_expands_to_ap = verify_expanded_witness(digit_set, k, expanded)

    dimension = n if n is not None else digit_set.size
    ap = find_ap_direct(digit_set, k, dimension, cap=cap)
    report.ap_found = ap is not None
    if ap is not None:
        x = project_ap(system, ap)
        report.ap_projects_to_kernel = (
            any(x) and all(v >= 0 for v in x) and not any(system.residual(x))
        )
    return report
