from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

REPO_ROOT = Path(__file__).parent.parent


@pytest.fixture(scope="session")
def rubrics_dir() -> Path:
    return REPO_ROOT / "rubrics"


@pytest.fixture(scope="session")
def missions_dir() -> Path:
    return REPO_ROOT / "missions"


class FakeClock:
    """Millisecond clock driven by the test."""

    def __init__(self, t: int = 0):
        self.t = t

    def __call__(self) -> int:
        return self.t

    def advance(self, ms: int) -> None:
        self.t += ms


@pytest.fixture
def fake_clock() -> FakeClock:
    return FakeClock()
