import numpy as np
import pytest

from varfrac import make_erf, make_exponential, make_mittag_leffler

# parameter sets used for the three transition families throughout
A1, A2, C, BETA = 0.6, 0.8, 2.0, 0.7


def families():
    return {
        "exp": make_exponential(A1, A2, C),
        "mlf": make_mittag_leffler(A1, A2, C, BETA),
        "erf": make_erf(A1, A2, C),
    }


@pytest.fixture(params=["exp", "mlf", "erf"])
def family(request):
    return families()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20211)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
