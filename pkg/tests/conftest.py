import os

import pytest
from hypothesis import HealthCheck, settings

from biscount.graphs import BipartiteGraph, ColouredGraph, uncoloured

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def bip(nl, nr, edges=()):
    return BipartiteGraph(nl, nr, tuple(edges))


K11 = bip(1, 1, [(0, 0)])
K22 = bip(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
PATH = bip(2, 1, [(0, 0), (1, 0)])  # u1 - v1 - u2
TRIANGLE = uncoloured(3, [(0, 1), (1, 2), (0, 2)])
STAR3 = uncoloured(4, [(0, 1), (0, 2), (0, 3)])
EDGE12 = ColouredGraph((1, 2), ((0, 1),))


@pytest.fixture
def k22():
    return K22


# acceptance criteria report one line each in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    def _record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        print(ACCEPTANCE_LINES[-1])
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
