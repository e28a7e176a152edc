import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pincohom import checks, grp

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CORPUS = checks.corpus()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=sorted(CORPUS))
def corpus_group(request):
    return CORPUS[request.param]


@pytest.fixture
def q8():
    return grp.quaternion()


@pytest.fixture
def gamma2():
    return checks.gamma(2)


def diag(*signs):
    return checks._diag(*signs)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    lines = test_acceptance.pytest_terminal_summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
