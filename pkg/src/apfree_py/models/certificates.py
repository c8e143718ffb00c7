"""Certificates of admissibility and non-admissibility."""

from enum import StrEnum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from ..exceptions import TraceFormatError


class InitialMatrix(StrEnum):
    A = "A"
    RREF = "RREF"
    CUSTOM = "CUSTOM"


class Outcome(StrEnum):
    REDUCED = "REDUCED"
    STUCK = "STUCK"


class ReductionStep(BaseModel):
    """One deletion: a sign-consistent row and the columns it forces to zero."""

    model_config = ConfigDict(frozen=True)

    row: int = Field(..., ge=0, description="Row index in the current matrix state")
    sign: str = Field(..., pattern=r"^[+-]$")
    deleted_columns: tuple[int, ...] = Field(
        ..., description="Column indices in original numbering"
    )


class ReductionTrace(BaseModel):
    """Replayable record of a reduction run."""

    initial_choice: InitialMatrix
    steps: list[ReductionStep] = Field(default_factory=list)
    outcome: Outcome
    surviving_columns: list[int] = Field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"initial={self.initial_choice}"]
        for step in self.steps:
            cols = ",".join(map(str, step.deleted_columns))
            lines.append(f"row={step.row} sign={step.sign} cols={cols}")
        lines.append(f"outcome={self.outcome}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "ReductionTrace":
        """Parse the line-oriented trace format.

        Surviving columns are not part of the text; they are left empty for
        REDUCED and must be recomputed by replay for STUCK.
        """
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        if len(lines) < 2:
            raise TraceFormatError("Trace needs a header and a footer")
        try:
            head_key, head_value = lines[0].split("=", 1)
            foot_key, foot_value = lines[-1].split("=", 1)
            if head_key != "initial" or foot_key != "outcome":
                raise TraceFormatError("Trace header/footer malformed", lines[0])
            steps = []
            for line in lines[1:-1]:
                fields = dict(part.split("=", 1) for part in line.split())
                cols = fields["cols"]
                steps.append(
                    ReductionStep(
                        row=int(fields["row"]),
                        sign=fields["sign"],
                        deleted_columns=tuple(int(c) for c in cols.split(",") if c),
                    )
                )
            return cls(
                initial_choice=InitialMatrix(head_value),
                steps=steps,
                outcome=Outcome(foot_value),
            )
        except (KeyError, ValueError) as e:
            raise TraceFormatError(f"Unparsable trace: {e}") from e


class FeasibilityResult(BaseModel):
    """Verdict on the cone {x >= 0 : Ax = 0}."""

    trivial: bool
    witness: tuple[int, ...] | None = None
    lp_optimum: Fraction = Fraction(0)
    rank: int | None = None


class ExpandedWitness(BaseModel):
    """An explicit k-term progression of vectors inside S(D, n)."""

    n: int
    vectors: list[tuple[int, ...]]
    diff: tuple[int, ...]


class CertificateKind(StrEnum):
    REDUCE_A = "reduce-A"
    REDUCE_RREF = "reduce-RREF"
    REDUCE_CUSTOM = "reduce-CUSTOM"
    LP = "LP"
    WITNESS = "witness"


class Certificate(BaseModel):
    """Proof object returned by the admissibility pipeline."""

    kind: CertificateKind
    trace: ReductionTrace | None = None
    lp_optimum: Fraction | None = None
    rank: int | None = None
    witness: tuple[int, ...] | None = None
    expanded: ExpandedWitness | None = None

    @property
    def admissible(self) -> bool | None:
        """Verdict carried by the certificate, None for a stuck reduction."""
        if self.kind is CertificateKind.WITNESS:
            return False
        if self.trace is not None and self.trace.outcome is Outcome.STUCK:
            return None
        return True


class WitnessDocument(BaseModel):
    """Witness JSON: digits, m, k, progression counts and the vector AP."""

    digits: list[int]
    m: int
    k: int
    x: dict[str, int]
    n: int
    vectors: list[list[int]] | None = None
