import random
from pathlib import Path

import pytest

from apfree_py.engine.constraints import build_system
from apfree_py.engine.ratlin import RatMatrix
from apfree_py.models.digits import DigitSet

GOLDEN = Path(__file__).parent / "golden"


def load_golden_matrix(name: str) -> RatMatrix:
    return RatMatrix.from_text((GOLDEN / name).read_text(encoding="utf-8"))


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def half_interval_11():
    """D = {0, ..., 5} modulo 11 with k = 3, the worked reduction example."""
    return build_system(DigitSet.from_interval(11, 0, 5), 3)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def clean_env(monkeypatch):
    """Drop APFREE_* variables so Settings sees only its defaults."""
    import os

    for name in list(os.environ):
        if name.startswith("APFREE_"):
            monkeypatch.delenv(name, raising=False)
    return monkeypatch
