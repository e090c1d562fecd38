import json
import math
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from graphbounds.graph import from_edge_list

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "hand_fixtures.json").read_text())


def exact(value):
    """Fixture value as float (``"inf"`` -> ``math.inf``)."""
    if value == "inf":
        return math.inf
    return float(Fraction(value))


def fixture_graph(name):
    fx = FIXTURES[name]
    return from_edge_list(fx["n"], fx["edges"])


@pytest.fixture(params=sorted(FIXTURES))
def fixture_name(request):
    return request.param


@st.composite
def graphs(draw, min_n=0, max_n=12):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edge_list(n, [e for e, keep in zip(pairs, chosen) if keep])


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion.

    Lines are printed as they are produced (visible with ``-s``) and
    repeated in the terminal summary of every run.
    """

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
