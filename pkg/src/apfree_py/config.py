"""Configuration settings for the apfree toolkit."""

import logging
import sys
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


def setup_logging(log_level: str = "INFO"):
    """Configure standard logging for the apfree_py package.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    """
    level = getattr(logging, log_level.upper(), logging.INFO)

    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(name)s:%(funcName)s:%(lineno)d | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )


class Settings(BaseSettings):
    """Toolkit configuration settings."""

    # Oracle limits
    ORACLE_CAP: int = Field(10_000_000, ge=1)
    KERNEL_WEIGHT_CAP: int = Field(8, ge=1)

    # Search
    SEARCH_JOBS: int = Field(1, ge=1)
    SEARCH_BUDGET: float | None = Field(None, gt=0)
    CACHE_PATH: Path | None = None
    USE_SYMMETRY: bool = False

    # Witnesses
    MINIMIZE_WITNESS: bool = False

    # Logging
    LOG_LEVEL: str = "INFO"

    model_config = SettingsConfigDict(
        env_prefix="APFREE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )
