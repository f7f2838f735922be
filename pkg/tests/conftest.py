import pytest

from caoli.cryptocore import PrivateKey
from caoli.exactmat import IntMatrix

# The hand-traced n = 2 instance: primes 3, 7, d = 1, P1 = [[1,0],[1,1]], P2 = I.
GOLDEN_PRIMES = (3, 7)
GOLDEN_P1 = ((1, 0), (1, 1))
GOLDEN_B = ((22, 15), (15, 15))


@pytest.fixture
def golden_sk():
    return PrivateKey(
        GOLDEN_PRIMES, IntMatrix.from_rows(GOLDEN_P1), IntMatrix.identity(2), 1
    )


@pytest.fixture
def golden_pk(golden_sk):
    return golden_sk.public_key


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
