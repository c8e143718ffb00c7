"""Digit sets and progressions in Z_m."""

from collections.abc import Iterable
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..exceptions import InvalidDigitSetError


class DigitSet(BaseModel):
    """Nonempty set of residues modulo m, stored ascending."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., description="Modulus")
    digits: tuple[int, ...] = Field(..., description="Strictly increasing residues")

    @model_validator(mode="after")
    def _check_digits(self) -> Self:
        if self.m < 2:
            raise InvalidDigitSetError(f"Modulus must be at least 2, got {self.m}")
        if not self.digits:
            raise InvalidDigitSetError("Digit set must be nonempty", self.digits)
        for d in self.digits:
            if not 0 <= d < self.m:
                raise InvalidDigitSetError(
                    f"Digit {d} is outside [0, {self.m - 1}]", self.digits
                )
        if any(a >= b for a, b in zip(self.digits, self.digits[1:], strict=False)):
            raise InvalidDigitSetError(
                "Digits must be strictly increasing", self.digits
            )
        return self

    @classmethod
    def of(cls, m: int, digits: Iterable[int]) -> Self:
        """Build a digit set from any iterable, sorting and deduplicating."""
        return cls(m=m, digits=tuple(sorted(set(digits))))

    @classmethod
    def from_interval(cls, m: int, a: int, b: int) -> Self:
        """The discrete interval [a, b] as a subset of Z_m."""
        if a > b:
            raise InvalidDigitSetError(f"Empty interval [{a},{b}]")
        return cls(m=m, digits=tuple(range(a, b + 1)))

    @classmethod
    def parse(cls, m: int, text: str) -> Self:
        """Parse `0:5,8` style notation (ranges and single digits)."""
        from ..misc.helpers import parse_digit_spec

        return cls.of(m, parse_digit_spec(text))

    @property
    def size(self) -> int:
        return len(self.digits)

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self.digits)

    def __contains__(self, item: object) -> bool:
        return item in self.digits

    def __len__(self) -> int:
        return len(self.digits)

    def is_subset(self, other: "DigitSet") -> bool:
        return self.m == other.m and set(self.digits) <= set(other.digits)

    def key(self) -> str:
        """Canonical cache key `m:d1,d2,...`."""
        return f"{self.m}:{','.join(map(str, self.digits))}"

    def notation(self) -> str:
        """Interval-union notation, e.g. `[0,6] ∪ {8}`."""
        from ..misc.helpers import format_digits

        return format_digits(self.digits)

    def __str__(self) -> str:
        return f"{self.notation()} mod {self.m}"


class Progression(BaseModel):
    """Non-trivial k-term arithmetic progression in Z_m."""

    model_config = ConfigDict(frozen=True)

    m: int
    k: int = Field(..., ge=3)
    start: int
    diff: int
    terms: tuple[int, ...]

    @model_validator(mode="after")
    def _check_terms(self) -> Self:
        if self.diff % self.m == 0:
            raise InvalidDigitSetError("Progression difference must be non-zero")
        expected = tuple((self.start + i * self.diff) % self.m for i in range(self.k))
        if self.terms != expected:
            raise InvalidDigitSetError(
                f"Terms {self.terms} do not match start {self.start}, diff {self.diff}"
            )
        return self

    @classmethod
    def build(cls, m: int, k: int, start: int, diff: int) -> Self:
        terms = tuple((start + i * diff) % m for i in range(k))
        return cls(m=m, k=k, start=start % m, diff=diff % m, terms=terms)

    def reversed(self) -> "Progression":
        """Same progression read backwards: (last term, -diff)."""
        return Progression.build(self.m, self.k, self.terms[-1], -self.diff)

    def label(self) -> str:
        """`start,diff` key used in witness JSON."""
        return f"{self.start},{self.diff}"
