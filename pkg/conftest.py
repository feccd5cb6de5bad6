import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import config
from lattice_core import DivisorClass, h_class
from mordell_weil import SectionCoords
from weyl import probe_point

KCONE_VARS = ("KCONE_MAX_STEPS", "KCONE_BOUND", "KCONE_PROBE_WEIGHTS", "KCONE_ORBIT_CAP",
              "KCONE_LOG_LEVEL", "KCONE_FIXTURE_DIR")


@pytest.fixture(autouse=True)
def clean_config(monkeypatch):
    """Every test starts from the built-in defaults"""
    for var in KCONE_VARS:
        monkeypatch.delenv(var, raising=False)
    config._overrides.clear()
    yield
    config._overrides.clear()


@pytest.fixture
def rng():
    return random.Random(20240229)


@pytest.fixture
def probe() -> DivisorClass:
    return probe_point()


@pytest.fixture
def h() -> DivisorClass:
    return h_class()


def random_class(rng: random.Random, spread: int = 3) -> DivisorClass:
    return DivisorClass(rng.randint(-spread, spread), tuple(rng.randint(-spread, spread) for _ in range(9)))


def random_translation(rng: random.Random, spread: int = 2) -> SectionCoords:
    """Integral t (the subgroup T0) with |a_i| <= spread"""
    return SectionCoords(tuple(rng.randint(-spread, spread) for _ in range(8)), 0)
