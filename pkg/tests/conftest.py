import pytest

from qfv.quiver import beilinson, validate_quiver
from qfv.tilting import tilting_arrows

# rays: 1-3 green (0->1), 4 red (0->2), 5 blue (1->2), 6 cyan (1->3), 7 magenta (2->3)
SEVEN_ARROWS = [(0, 1), (0, 1), (0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
TOY = [(0, 1), (0, 1), (0, 2), (1, 2)]
GREEN, RED, BLUE, CYAN, MAGENTA = 1, 4, 5, 6, 7


@pytest.fixture(scope="session")
def seven():
    return validate_quiver(4, SEVEN_ARROWS)


@pytest.fixture(scope="session")
def seven_tq(seven):
    return tilting_arrows(seven)


@pytest.fixture(scope="session")
def toy():
    return validate_quiver(3, TOY)


@pytest.fixture(scope="session")
def toy_tq(toy):
    return tilting_arrows(toy)


@pytest.fixture(scope="session")
def p1_tq():
    return tilting_arrows(beilinson(1))


@pytest.fixture(scope="session")
def p2_tq():
    return tilting_arrows(beilinson(2))


@pytest.fixture(scope="session")
def p3_tq():
    return tilting_arrows(beilinson(3))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
