from functools import lru_cache

import pytest

from pgon_lattices.builders import build_any, build_jigsaw


@lru_cache(maxsize=None)
def tiling(p, F, x=None, y=None):
    return build_any(p, F) if x is None else build_jigsaw(p, F, x, y)


@pytest.fixture
def p5f8():
    return tiling(5, 8)


@pytest.fixture
def jig12():
    return tiling(12, 6, 2, 3)


@pytest.fixture
def p12f3():
    return tiling(12, 3, 3, 1)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
