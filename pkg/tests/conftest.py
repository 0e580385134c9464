import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).parents[1]
sys.path.insert(0, str(PROJECT_ROOT))

from src.graph import read_graph  # noqa: E402

GRAPH_DIR = PROJECT_ROOT / "data" / "graphs"


@pytest.fixture(scope="session")
def graph_dir():
    return GRAPH_DIR


@pytest.fixture(scope="session")
def load():
    """Read a shipped fixture graph by name, e.g. ``load("BAB9")``."""

    def _load(name):
        return read_graph(GRAPH_DIR / f"{name}.txt")

    return _load
