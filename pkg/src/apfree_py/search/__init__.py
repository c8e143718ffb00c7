"""Maximum admissible digit sets: search, verdict cache and expected tables."""

from .cache import CachedVerdict, VerdictCache
from .runner import (
    SearchOptions,
    affine_orbit_count,
    collect_admissible,
    search_all_admissible,
    search_max,
)
from .tables import load_expectations, render_table, verify_table_row

__all__ = [
    "CachedVerdict",
    "SearchOptions",
    "VerdictCache",
    "affine_orbit_count",
    "collect_admissible",
    "load_expectations",
    "render_table",
    "search_all_admissible",
    "search_max",
    "verify_table_row",
]
