import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dblcat.gen import chain, corpus, gen_commuting_squares, gen_poset_category  # noqa: E402


@lru_cache(maxsize=None)
def _corpus():
    return tuple(corpus())


@pytest.fixture(scope="session")
def full_corpus():
    return _corpus()


@pytest.fixture
def sq2():
    return gen_commuting_squares(gen_poset_category(chain(2)))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
