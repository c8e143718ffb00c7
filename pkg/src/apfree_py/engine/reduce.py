"""Reducibility: deleting variables forced to zero by sign-consistent rows."""

import logging
from enum import StrEnum
from fractions import Fraction

from ..exceptions import DimensionMismatchError, NotInvertibleError
from ..models.certificates import InitialMatrix, Outcome, ReductionStep, ReductionTrace
from .constraints import ConstraintSystem
from .ratlin import RatMatrix, is_invertible, mat_mul, rref

logger = logging.getLogger(__name__)


class RowStrategy(StrEnum):
    TOPMOST = "topmost"
    BOTTOMMOST = "bottommost"


def initial_matrix(
    system: ConstraintSystem,
    initial: InitialMatrix,
    transform: RatMatrix | None = None,
) -> RatMatrix:
    """The starting matrix B: A, its RREF, or T·A for a user-supplied T."""
    match initial:
        case InitialMatrix.A:
            return system.matrix
        case InitialMatrix.RREF:
            return rref(system.matrix)[0]
        case InitialMatrix.CUSTOM:
            if transform is None:
                raise NotInvertibleError("CUSTOM initial matrix requires T")
            if transform.cols != system.matrix.rows:
                raise DimensionMismatchError(transform.shape, system.matrix.shape)
            if not is_invertible(transform):
                raise NotInvertibleError()
            return mat_mul(transform, system.matrix)


class _State:
    """Current rows and the original numbering of the surviving columns."""

    def __init__(self, matrix: RatMatrix):
        self.columns = list(range(matrix.cols))
        self.rows = [list(row) for row in matrix.entries]
        self.prune()

    def prune(self):
        self.rows = [row for row in self.rows if any(x != 0 for x in row)]

    def delete(self, positions: set[int]):
        self.columns = [c for j, c in enumerate(self.columns) if j not in positions]
        self.rows = [
            [x for j, x in enumerate(row) if j not in positions] for row in self.rows
        ]
        self.prune()


def _sign(row: list[Fraction]) -> str | None:
    """'+' or '-' for a nonzero sign-consistent row, else None."""
    has_pos = any(x > 0 for x in row)
    has_neg = any(x < 0 for x in row)
    if has_pos and has_neg:
        return None
    if has_pos:
        return "+"
    if has_neg:
        return "-"
    return None


def reduce_with(
    system: ConstraintSystem,
    initial: InitialMatrix = InitialMatrix.RREF,
    transform: RatMatrix | None = None,
    strategy: RowStrategy = RowStrategy.TOPMOST,
) -> ReductionTrace:
    """Run the reduction with an explicit row-selection strategy.

    Args:
        system: Constraint system
        initial: Starting matrix choice
        transform: T for the CUSTOM choice
        strategy: Which sign-consistent row to use first

    Returns:
        Trace whose outcome is REDUCED iff every column was deleted
    """
    state = _State(initial_matrix(system, initial, transform))
    steps: list[ReductionStep] = []
    while state.columns:
        order = range(len(state.rows))
        if strategy is RowStrategy.BOTTOMMOST:
            order = reversed(order)
        chosen = None
        for r in order:
            sign = _sign(state.rows[r])
            if sign is not None:
                chosen = r, sign
                break
        if chosen is None:
            break
        r, sign = chosen
        positions = {j for j, x in enumerate(state.rows[r]) if x != 0}
        steps.append(
            ReductionStep(
                row=r,
                sign=sign,
                deleted_columns=tuple(sorted(state.columns[j] for j in positions)),
            )
        )
        state.delete(positions)

    outcome = Outcome.STUCK if state.columns else Outcome.REDUCED
    logger.debug(
        f"[Reduce] {system.digit_set}, k={system.k}, initial={initial}: "
        f"{outcome} after {len(steps)} steps"
    )
    return ReductionTrace(
        initial_choice=initial,
        steps=steps,
        outcome=outcome,
        surviving_columns=list(state.columns),
    )


def reduce(
    system: ConstraintSystem,
    initial: InitialMatrix = InitialMatrix.RREF,
    transform: RatMatrix | None = None,
) -> ReductionTrace:
    """Reduce with the canonical topmost-first row choice."""
    return reduce_with(system, initial, transform, RowStrategy.TOPMOST)


def verify_trace(
    system: ConstraintSystem,
    trace: ReductionTrace,
    transform: RatMatrix | None = None,
) -> bool:
    """Replay a trace against a freshly built initial matrix.

    Every step's row must be nonzero and sign-consistent (with the recorded
    sign) in the state it is applied to, and must delete exactly its support.
    A REDUCED claim must leave no columns; a STUCK claim must leave no usable row.
    """
    try:
        state = _State(initial_matrix(system, trace.initial_choice, transform))
    except (NotInvertibleError, DimensionMismatchError) as e:
        logger.warning(f"[Reduce] Cannot rebuild initial matrix: {e}")
        return False

    for index, step in enumerate(trace.steps):
        if step.row >= len(state.rows):
            logger.info(f"[Reduce] Step {index}: row {step.row} does not exist")
            return False
        row = state.rows[step.row]
        if _sign(row) != step.sign:
            logger.info(f"[Reduce] Step {index}: row {step.row} is not {step.sign}")
            return False
        positions = {j for j, x in enumerate(row) if x != 0}
        if tuple(sorted(state.columns[j] for j in positions)) != tuple(
            sorted(step.deleted_columns)
        ):
            logger.info(f"[Reduce] Step {index}: deleted columns do not match row")
            return False
        state.delete(positions)

    if trace.outcome is Outcome.REDUCED:
        return not state.columns and not trace.surviving_columns
    if not state.columns:
        return False
    if any(_sign(row) is not None for row in state.rows):
        return False
    return not trace.surviving_columns or trace.surviving_columns == state.columns
