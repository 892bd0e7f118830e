"""Shared fixtures: corpus paths, plus test-support modules on sys.path."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

sys.path.insert(0, str(FIXTURES))


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return FIXTURES / "corpus"
