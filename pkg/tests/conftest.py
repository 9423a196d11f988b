import functools

import pytest

from loggp import Grid, Params, black_soliton, traveling_wave


@functools.lru_cache(maxsize=None)
def cached_black(lam=1.0, length=40.0, n=4096):
    return black_soliton(Params(lam), Grid.centered(length, n))


@functools.lru_cache(maxsize=None)
def cached_traveling(lam=1.0, c=1.0, length=40.0, n=4096):
    return traveling_wave(Params(lam, c), Grid.centered(length, n))


@pytest.fixture
def black():
    return cached_black()


@pytest.fixture
def dark():
    return cached_traveling()


# criterion number -> (passed, summary); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, summary = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {summary}")
