import math

import pytest

from orci.counts import TwoArmCounts


def r1_closed_form(c: TwoArmCounts):
    """Outcome probability at r = 1: the Beta integral of two binomials sharing p."""
    return math.comb(c.n_a, c.x_a) * math.comb(c.n_b, c.x_b) / ((c.n + 1) * math.comb(c.n, c.successes))


@pytest.fixture
def counts():
    return TwoArmCounts


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[k])
