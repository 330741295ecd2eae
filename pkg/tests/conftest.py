"""
Pytest configuration and fixtures for testing.
"""
import random

import pytest

from app.core.rng import make_rng
from app.models.sequence import BuildingSequence
from app.models.table import TableKind, TableMode
from app.services import lastfall_service
from app.services.lastfall_service import LastFallTable


# Row n of D(n, ·) for n = 0..8
DISPLACEMENT_ROWS = {
    0: [1],
    1: [1],
    2: [1, 1],
    3: [1, 2, 3],
    4: [1, 3, 7, 9, 4],
    5: [1, 4, 12, 24, 35, 24, 20],
    8: [1, 7, 33, 115, 327, 765, 1523, 2553, 3696, 4852, 5708, 5892, 5452, 4212, 2844, 1764, 576],
}

# Σ_A M(n, A) for n = 0..10
MOTZKIN_NUMBERS = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]

WORKED_PATH = "UUHDHUHDDH"


@pytest.fixture
def rng() -> random.Random:
    """Seeded random source."""
    return make_rng(12345)


@pytest.fixture(scope="session")
def weighted_full() -> LastFallTable:
    """Weighted table in full mode up to width 12."""
    return lastfall_service.build_table(12, TableKind.WEIGHTED, TableMode.FULL)


@pytest.fixture(scope="session")
def unweighted_full() -> LastFallTable:
    """Unweighted table in full mode up to width 12."""
    return lastfall_service.build_table(12, TableKind.UNWEIGHTED, TableMode.FULL)


@pytest.fixture
def worked_sequence() -> BuildingSequence:
    """Building sequence (1, 1, 1, 2, 2) of the width-10 example path."""
    return BuildingSequence.from_entries((1, 1, 1, 2, 2))
