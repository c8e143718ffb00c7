"""Exact decision of the kernel cone and expansion of witnesses."""

import logging
from collections import Counter
from enum import StrEnum
from fractions import Fraction
from math import gcd, lcm

from ..exceptions import APFreeError, InvalidWitnessError
from ..models.certificates import (
    Certificate,
    CertificateKind,
    ExpandedWitness,
    FeasibilityResult,
    InitialMatrix,
    Outcome,
    WitnessDocument,
)
from ..models.digits import DigitSet
from .constraints import ConstraintSystem, build_system
from .ratlin import RatMatrix, rref_with_pivots
from .reduce import reduce

logger = logging.getLogger(__name__)


class Method(StrEnum):
    AUTO = "auto"
    REDUCE = "reduce"
    LP = "lp"


def _max_box_lp(matrix: RatMatrix) -> tuple[Fraction, list[Fraction]]:
    """Maximize sum(x) subject to M·x = 0 and 0 <= x <= 1.

    Bounded-variable primal simplex over exact rationals. The RREF pivot
    columns give a feasible starting basis at x = 0; Bland's rule (smallest
    eligible entering index, smallest leaving index on ties, bound flips
    included) guarantees termination.

    Returns:
        Optimal value and an optimal vertex
    """
    n = matrix.cols
    if n == 0:
        return Fraction(0), []

    reduced, pivots = rref_with_pivots(matrix)
    tableau = [list(reduced.entries[i]) for i in range(len(pivots))]
    basis = list(pivots)
    value = [Fraction(0)] * n
    at_upper = [False] * n
    one = Fraction(1)

    while True:
        basic = set(basis)
        entering = None
        for j in range(n):
            if j in basic:
                continue
            # every cost is 1, so d_j = 1 - (column sum over basic rows)
            cost = one - sum((row[j] for row in tableau), Fraction(0))
            if (cost > 0 and not at_upper[j]) or (cost < 0 and at_upper[j]):
                entering = j
                break
        if entering is None:
            break

        j = entering
        direction = -1 if at_upper[j] else 1
        step = one
        leave: int | None = None
        leave_var = j
        leave_to_upper = False
        for i, row in enumerate(tableau):
            rate = direction * row[j]
            if rate > 0:
                limit = value[basis[i]] / rate
                to_upper = False
            elif rate < 0:
                limit = (one - value[basis[i]]) / -rate
                to_upper = True
            else:
                continue
            if limit < step or (limit == step and basis[i] < leave_var):
                step, leave, leave_var, leave_to_upper = limit, i, basis[i], to_upper

        for i, row in enumerate(tableau):
            if row[j] != 0:
                value[basis[i]] -= direction * row[j] * step
        value[j] += direction * step

        if leave is None:
            at_upper[j] = not at_upper[j]
            continue

        out = basis[leave]
        at_upper[out] = leave_to_upper
        value[out] = one if leave_to_upper else Fraction(0)
        at_upper[j] = False
        basis[leave] = j

        pivot_row = tableau[leave]
        lead = pivot_row[j]
        if lead != 1:
            pivot_row = [x / lead for x in pivot_row]
            tableau[leave] = pivot_row
        for i, row in enumerate(tableau):
            if i != leave and row[j] != 0:
                factor = row[j]
                tableau[i] = [x - factor * y for x, y in zip(row, pivot_row, strict=True)]

    return sum(value, Fraction(0)), value


def _integral(x: list[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to integers with gcd 1."""
    scale = lcm(*(v.denominator for v in x)) if x else 1
    ints = [int(v * scale) for v in x]
    divisor = gcd(*ints) or 1
    return tuple(v // divisor for v in ints)


def minimize_witness(system: ConstraintSystem, witness: tuple[int, ...]) -> tuple[int, ...]:
    """Greedily drop progressions from the support while the cone stays nontrivial."""
    support = [j for j, w in enumerate(witness) if w]
    current: list[Fraction] = [Fraction(w) for w in witness]
    for j in list(support):
        if j not in support or len(support) == 1:
            continue
        trial = [c for c in support if c != j]
        optimum, x = _max_box_lp(system.matrix.select_columns(trial))
        if optimum > 0:
            current = [Fraction(0)] * system.num_columns
            for c, v in zip(trial, x, strict=True):
                current[c] = v
            support = [c for c in trial if current[c] != 0]
    minimized = _integral(current)
    logger.debug(
        f"[Feasex] Witness support {sum(1 for w in witness if w)} -> {len(support)}"
    )
    return minimized


def decide_cone(system: ConstraintSystem, minimize: bool = False) -> FeasibilityResult:
    """Decide whether {x >= 0 : Ax = 0} contains only the zero vector.

    Solves max sum(x) subject to Ax = 0, 0 <= x <= 1 exactly. The cone is
    trivial iff the optimum is 0; otherwise the optimal vertex is scaled to a
    primitive integer witness.

    Args:
        system: Constraint system
        minimize: Greedily shrink the witness support

    Returns:
        Feasibility result with the LP optimum and rank of A
    """
    optimum, x = _max_box_lp(system.matrix)
    system_rank = len(rref_with_pivots(system.matrix)[1]) if system.num_columns else 0
    if optimum == 0:
        return FeasibilityResult(trivial=True, lp_optimum=optimum, rank=system_rank)

    witness = _integral(x)
    if minimize:
        witness = minimize_witness(system, witness)
    if any(system.residual(list(witness))):
        raise APFreeError("LP vertex does not solve Ax = 0", details={"x": witness})
    return FeasibilityResult(
        trivial=False, witness=witness, lp_optimum=optimum, rank=system_rank
    )


def _validate_witness(system: ConstraintSystem, witness: tuple[int, ...]):
    if len(witness) != system.num_columns:
        raise InvalidWitnessError(
            f"Witness has {len(witness)} entries, system has {system.num_columns} columns"
        )
    if any(w < 0 for w in witness):
        raise InvalidWitnessError("Witness entries must be nonnegative")
    if not any(witness):
        raise InvalidWitnessError("Witness must be nonzero")
    if any(system.residual(list(witness))):
        raise InvalidWitnessError("Witness does not satisfy Ax = 0")


def expand_witness(system: ConstraintSystem, witness: tuple[int, ...]) -> ExpandedWitness:
    """Lay out a kernel vector as an explicit progression of vectors.

    Progression v contributes witness[v] coordinates carrying its terms down
    the k vectors. Each digit d is then padded with constant-d coordinates up
    to M = max_d c_d, where c_d counts d in the first vector, so n = |D|·M.
    """
    _validate_witness(system, witness)
    digit_set = system.digit_set
    m, k = digit_set.m, system.k

    columns: list[tuple[int, ...]] = []
    for progression, count in zip(system.progressions, witness, strict=True):
        columns.extend([progression.terms] * count)

    counts = Counter(column[0] for column in columns)
    top = max(counts[d] for d in digit_set.digits)
    for d in digit_set.digits:
        columns.extend([(d,) * k] * (top - counts[d]))

    vectors = [tuple(column[i] for column in columns) for i in range(k)]
    diff = tuple((b - a) % m for a, b in zip(vectors[0], vectors[1], strict=True))
    return ExpandedWitness(n=len(columns), vectors=vectors, diff=diff)


def verify_expanded_witness(
    digit_set: DigitSet, k: int, expanded: ExpandedWitness
) -> bool:
    """Independent check of an expanded witness.

    The vectors must form a k-term progression with non-zero common
    difference, and in every vector each digit must occur exactly n/|D| times.
    """
    m = digit_set.m
    n = expanded.n
    size = len(digit_set.digits)
    if len(expanded.vectors) != k or n == 0 or n % size:
        return False
    if any(len(vector) != n for vector in expanded.vectors):
        return False
    if len(expanded.diff) != n or all(c % m == 0 for c in expanded.diff):
        return False

    share = n // size
    wanted = dict.fromkeys(digit_set.digits, share)
    for vector in expanded.vectors:
        if dict(Counter(vector)) != wanted:
            return False

    first = expanded.vectors[0]
    for i, vector in enumerate(expanded.vectors):
        for coordinate in range(n):
            if vector[coordinate] != (first[coordinate] + i * expanded.diff[coordinate]) % m:
                return False
    return True


def witness_document(
    system: ConstraintSystem,
    witness: tuple[int, ...],
    expanded: ExpandedWitness | None = None,
) -> WitnessDocument:
    """Witness JSON model for a kernel vector and optionally its expansion."""
    expanded = expanded or expand_witness(system, witness)
    return WitnessDocument(
        digits=list(system.digit_set.digits),
        m=system.digit_set.m,
        k=system.k,
        x={
            progression.label(): count
            for progression, count in zip(system.progressions, witness, strict=True)
            if count
        },
        n=expanded.n,
        vectors=[list(vector) for vector in expanded.vectors],
    )


_REDUCTION_KINDS = {
    InitialMatrix.A: CertificateKind.REDUCE_A,
    InitialMatrix.RREF: CertificateKind.REDUCE_RREF,
    InitialMatrix.CUSTOM: CertificateKind.REDUCE_CUSTOM,
}


def check_admissible(
    digit_set: DigitSet,
    k: int,
    method: Method = Method.AUTO,
    minimize: bool = False,
    initial: InitialMatrix | None = None,
    transform: RatMatrix | None = None,
    expand: bool = True,
) -> tuple[bool | None, Certificate]:
    """Admissibility pipeline: reduce with A, then with RREF, then the LP.

    Args:
        digit_set: Digit set D
        k: Progression length
        method: AUTO runs the full pipeline; REDUCE stops after the reductions
            (verdict None when all of them get stuck); LP skips the reductions
        minimize: Shrink the witness before expansion
        initial: Try only this starting matrix instead of A then RREF
        transform: Invertible T for InitialMatrix.CUSTOM
        expand: Build and verify the explicit progression for a witness

    Returns:
        (admissible, certificate)
    """
    system = build_system(digit_set, k)

    if method is not Method.LP:
        choices = [initial] if initial is not None else [InitialMatrix.A, InitialMatrix.RREF]
        for choice in choices:
            trace = reduce(system, choice, transform)
            if trace.outcome is Outcome.REDUCED:
                return True, Certificate(kind=_REDUCTION_KINDS[choice], trace=trace)
        if method is Method.REDUCE:
            return None, Certificate(kind=_REDUCTION_KINDS[choices[-1]], trace=trace)

    result = decide_cone(system, minimize=minimize)
    if result.trivial:
        return True, Certificate(
            kind=CertificateKind.LP, lp_optimum=result.lp_optimum, rank=result.rank
        )

    assert result.witness is not None
    if not expand:
        return False, Certificate(
            kind=CertificateKind.WITNESS,
            lp_optimum=result.lp_optimum,
            rank=result.rank,
            witness=result.witness,
        )
    expanded = expand_witness(system, result.witness)
    if not verify_expanded_witness(digit_set, k, expanded):
        raise APFreeError(
            "Expanded witness failed verification",
            details={"digits": digit_set.key(), "k": k, "x": result.witness},
        )
    return False, Certificate(
        kind=CertificateKind.WITNESS,
        lp_optimum=result.lp_optimum,
        rank=result.rank,
        witness=result.witness,
        expanded=expanded,
    )
