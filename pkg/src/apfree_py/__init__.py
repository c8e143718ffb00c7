# Main entry point
from .certifier import Certifier
from .config import Settings

# Core operations (for advanced users)
from .engine import (
    Method,
    bound_report,
    build_system,
    check_admissible,
    decide_cone,
    expand_witness,
    reduce,
    verify_expanded_witness,
    verify_trace,
)

# All exceptions
from .exceptions import (
    APFreeError,
    ConfigurationError,
    DimensionMismatchError,
    InvalidDigitSetError,
    InvalidWitnessError,
    NotInvertibleError,
    OracleCapExceededError,
    PreconditionError,
    TraceFormatError,
)
from .models import Certificate, DigitSet, Progression, SearchReport
from .search import SearchOptions, search_max

__version__ = "0.1.0"

__all__ = [
    # Main entry point
    "Certifier",
    "Settings",
    # Models
    "DigitSet",
    "Progression",
    "Certificate",
    "SearchReport",
    # Core operations
    "Method",
    "build_system",
    "reduce",
    "verify_trace",
    "decide_cone",
    "expand_witness",
    "verify_expanded_witness",
    "check_admissible",
    "bound_report",
    "SearchOptions",
    "search_max",
    # Exceptions
    "APFreeError",
    "InvalidDigitSetError",
    "PreconditionError",
    "DimensionMismatchError",
    "NotInvertibleError",
    "InvalidWitnessError",
    "OracleCapExceededError",
    "TraceFormatError",
    "ConfigurationError",
    # Version
    "__version__",
]
