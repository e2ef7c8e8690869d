from __future__ import annotations

import pytest

from neumaier.constructions import gamma25, latin_square_graph, square_order5
from neumaier.graph import decode_graph6

G25_ID = "X|}UJk]J}I?tYBKNrZ|GqQhebAybQwwh}KiWWdUHiKJySWvQ^?}"


@pytest.fixture(scope="session")
def g25():
    return gamma25()


@pytest.fixture(scope="session")
def g25_decoded():
    return decode_graph6(G25_ID)


@pytest.fixture(scope="session")
def latin5():
    return latin_square_graph(square_order5())


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance")
        for line in RESULTS:
            terminalreporter.write_line(line)
