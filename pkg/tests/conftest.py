import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wvgdesign.enumeration import enumerate_cwvg  # noqa: E402


@lru_cache(maxsize=None)
def corpus(n, order="breadth_first"):
    return tuple(enumerate_cwvg(n, order))


@pytest.fixture(scope="session")
def games_upto5():
    return [node for n in range(1, 6) for node in corpus(n)]


@pytest.fixture
def get_corpus():
    return corpus
