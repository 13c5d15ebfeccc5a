from __future__ import annotations

import pytest

from coxtrans.coxeter import CoxeterGraph, SignedWord, a4_example_word


@pytest.fixture
def a2():
    return CoxeterGraph.path(2)


@pytest.fixture
def a4_word():
    return a4_example_word()


def word(letters, n=2):
    return SignedWord(tuple(letters), CoxeterGraph.path(n))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
