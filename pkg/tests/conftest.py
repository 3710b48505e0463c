import numpy as np
import pytest

from hhineq.exprdsl import parse

# the three instantiating functions of the special-means propositions
INSTANTIATING_FUNCTIONS = ("1/x", "x^2", "x^3", "x^4", "-ln(x)")


def random_intervals(seed, count, lo=0.1, hi=10.0, min_width=1e-3):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        a, b = sorted(rng.uniform(lo, hi, size=2))
        if b - a >= min_width:
            out.append((float(a), float(b)))
    return out


@pytest.fixture
def instantiating_functions():
    return [parse(s) for s in INSTANTIATING_FUNCTIONS]


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
