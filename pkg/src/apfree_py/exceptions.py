"""Custom exceptions for the apfree toolkit."""

from typing import Any


class APFreeError(Exception):
    """Base toolkit exception."""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        """Initialize toolkit error.

        Args:
            message: Error message
            details: Structured context (offending values, limits) if applicable
        """
        super().__init__(message)
        self.details = details or {}


class InvalidDigitSetError(APFreeError):
    """Digit set or modulus is malformed."""

    def __init__(self, message: str, digits: Any = None):
        super().__init__(message, details={"digits": digits})
        self.digits = digits


class PreconditionError(APFreeError):
    """A hypothesis of an operation does not hold."""

    def __init__(self, hypothesis: str, message: str | None = None):
        if message is None:
            message = f"Hypothesis violated: {hypothesis}"
        super().__init__(message, details={"hypothesis": hypothesis})
        self.hypothesis = hypothesis


class DimensionMismatchError(APFreeError):
    """Matrix shapes are incompatible."""

    def __init__(
        self, left: tuple[int, int], right: tuple[int, int], message: str | None = None
    ):
        if message is None:
            message = f"Incompatible shapes {left[0]}x{left[1]} and {right[0]}x{right[1]}"
        super().__init__(message, details={"left": left, "right": right})
        self.left = left
        self.right = right


class NotInvertibleError(APFreeError):
    """Transformation matrix is not invertible."""

    def __init__(self, message: str = "Transformation matrix T is not invertible"):
        super().__init__(message)


class InvalidWitnessError(APFreeError):
    """Witness vector violates the kernel-cone invariants."""

    def __init__(self, message: str):
        super().__init__(message)


class OracleCapExceededError(APFreeError):
    """Brute-force materialization would exceed the configured cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(
            f"S(D,n) has {count} vectors, above the oracle cap of {cap}",
            details={"count": count, "cap": cap},
        )
        self.count = count
        self.cap = cap


class TraceFormatError(APFreeError):
    """Error parsing a serialized trace or matrix."""

    def __init__(self, message: str, raw_line: str | None = None):
        super().__init__(message)
        self.raw_line = raw_line


class ConfigurationError(APFreeError):
    """Configuration or bundled data error."""

    def __init__(self, message: str):
        super().__init__(message)
