import itertools
import os
import sys

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from bookshelf import Shelf  # noqa: E402


def all_shelves(n):
    for books in itertools.permutations(range(1, n + 1)):
        yield Shelf(books)


@st.composite
def shelves(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    return Shelf(tuple(draw(st.permutations(range(1, n + 1)))))


@pytest.fixture
def tmp_cache(tmp_path):
    d = tmp_path / "cache"
    d.mkdir()
    return d


ACCEPTANCE_LINES: dict[str, str] = {}


def record_criterion(key: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES[key] = f"{'PASS' if passed else 'FAIL'}  {key}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
