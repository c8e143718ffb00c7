"""Report models for bounds, searches and table reproduction."""

from enum import StrEnum
from fractions import Fraction

from pydantic import BaseModel, Field

from .digits import DigitSet


class TheoremBound(BaseModel):
    """Exponential lower bound base^n / n^denominator_exponent (constants omitted)."""

    base: int
    denominator_exponent: Fraction


class BoundReport(BaseModel):
    """Construction and bound values at a concrete (m, k, n)."""

    m: int
    k: int
    n: int
    construction: DigitSet
    exact_size: int = Field(..., description="Multinomial |S(D, n)|")
    lin_wolf: int | None = None
    ep_r3: Fraction | None = Field(None, description="k = 3 base only")
    theorem: TheoremBound | None = None
    notes: list[str] = Field(default_factory=list)


class MethodBreakdown(BaseModel):
    """Verdict counts by certificate type."""

    reduce_a: int = 0
    reduce_rref: int = 0
    lp: int = 0
    witness: int = 0
    cached: int = 0
    pruned: int = Field(0, description="Rejected via an inadmissible subset")


class SearchReport(BaseModel):
    """Maximum admissible digit sets modulo p for one progression length."""

    p: int
    k: int
    max_size: int
    count_at_max: int | None = None
    first_set: DigitSet
    method_breakdown: MethodBreakdown = Field(default_factory=MethodBreakdown)
    elapsed: float = Field(..., description="Seconds")
    complete: bool
    revalidated: bool | None = Field(
        None, description="Second-pass certificate check of the sets at max size"
    )

    @property
    def cell(self) -> str:
        """Table cell: `size` or `>=size` for truncated searches."""
        return str(self.max_size) if self.complete else f">={self.max_size}"


class ExpectationStatus(StrEnum):
    OK = "ok"
    UNVERIFIABLE = "unverifiable-as-printed"


class TableExpectation(BaseModel):
    """One row of the bundled expected-values file."""

    p: int
    k: int
    max_size: int
    lower_bound: bool = Field(False, description="Printed with a >= sign")
    count: int | None = None
    first_set: str = Field(..., description="Digit spec, e.g. 0:6,8")
    initial: str = ""
    starred: bool = False
    construction_size: int | None = None
    status: ExpectationStatus = ExpectationStatus.OK


class RowCheck(BaseModel):
    """Comparison of a search against an expected row."""

    p: int
    k: int
    passed: bool
    diffs: list[str] = Field(default_factory=list)
    report: SearchReport | None = None


class OrbitStats(BaseModel):
    """Affine orbit decomposition of the admissible sets of one size."""

    p: int
    k: int
    size: int
    total_sets: int
    orbit_count: int
    orbit_sizes: list[int]
    representatives: list[DigitSet] = Field(default_factory=list)
