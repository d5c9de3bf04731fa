import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from prabmix import QuadSpec, RlStableTable


@pytest.fixture(scope="session")
def spec():
    return QuadSpec()


class TableCache:
    """Session-wide RL-of-stable tables; building one takes a few seconds."""

    def __init__(self):
        self._tables = {}

    def get(self, alpha, nu):
        if alpha >= 1.0 or nu == 0.0:
            return None
        key = (round(alpha, 12), round(nu, 12))
        if key not in self._tables:
            self._tables[key] = RlStableTable(alpha, nu)
        return self._tables[key]


@pytest.fixture(scope="session")
def tables():
    return TableCache()
