from fractions import Fraction

import pytest

from realehrhart.polytope import box, validate


def poly(dim, rows):
    """Build a polytope from ``(normal, "p/q")`` pairs."""
    return validate(dim, [(tuple(a), Fraction(b)) for a, b in rows])


@pytest.fixture
def small_square():
    # [2/3, 1] x [0, 1/3], inequality order x<=1, y<=1/3, -x<=-2/3, -y<=0
    return poly(2, [((1, 0), "1"), ((0, 1), "1/3"), ((-1, 0), "-2/3"), ((0, -1), "0")])


@pytest.fixture
def unit_square():
    return box([0, 0], [1, 1])


@pytest.fixture
def shifted_square():
    return box([1, 0], [2, 1])


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
