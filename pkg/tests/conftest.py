"""Shared fixtures for the billiards test suite."""

import os
import sys
from typing import List, Tuple

import pytest
from hypothesis import HealthCheck, settings
from loguru import logger

from src.billiards.board import BoxSpec, make_box

# Walks and lattice scans are slower than the default deadline allows
settings.register_profile(
    "billiards",
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture, HealthCheck.too_slow],
)
settings.load_profile("billiards")


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    """Drop BILLIARD_* settings from the environment and keep logs quiet."""
    for name in list(os.environ):
        if name.startswith("BILLIARD_"):
            monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("BILLIARD_LOG_LEVEL", "ERROR")
    logger.remove()
    logger.add(sys.stderr, level="ERROR")
    yield
    logger.remove()


@pytest.fixture
def box_4x3() -> BoxSpec:
    return make_box([4, 3])


@pytest.fixture
def box_2x6() -> BoxSpec:
    return make_box([2, 6])


@pytest.fixture
def small_family() -> List[Tuple[int, ...]]:
    """A handful of coprime and non-coprime boxes in one to three dimensions."""
    return [(1,), (3,), (1, 1), (2, 3), (4, 3), (2, 6), (2, 4), (4, 6), (1, 2, 3), (2, 3, 5), (2, 2, 4)]

