import random
from pathlib import Path

import pytest

from swtorsion.config import get_settings

DATA_DIR = Path(__file__).with_name("data")


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def cases() -> int:
    """Number of randomized cases per property test."""
    return get_settings().property_cases


@pytest.fixture
def rng() -> random.Random:
    return random.Random(get_settings().seed)
