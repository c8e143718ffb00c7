"""Data models for the apfree toolkit."""

from .certificates import (
    Certificate,
    CertificateKind,
    ExpandedWitness,
    FeasibilityResult,
    InitialMatrix,
    Outcome,
    ReductionStep,
    ReductionTrace,
    WitnessDocument,
)
from .digits import DigitSet, Progression
from .reports import (
    BoundReport,
    ExpectationStatus,
    MethodBreakdown,
    OrbitStats,
    RowCheck,
    SearchReport,
    TableExpectation,
    TheoremBound,
)

__all__ = [
    "BoundReport",
    "Certificate",
    "CertificateKind",
    "DigitSet",
    "ExpandedWitness",
    "ExpectationStatus",
    "FeasibilityResult",
    "InitialMatrix",
    "MethodBreakdown",
    "OrbitStats",
    "Outcome",
    "Progression",
    "ReductionStep",
    "ReductionTrace",
    "RowCheck",
    "SearchReport",
    "TableExpectation",
    "TheoremBound",
    "WitnessDocument",
]
