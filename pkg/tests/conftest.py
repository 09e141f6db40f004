import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import pytest


def base_seed() -> int:
    return int(os.environ.get("OBSTRUCTIA_SEED", "0"))


@pytest.fixture
def seed() -> int:
    return base_seed()
