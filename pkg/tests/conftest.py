import os

import pytest
from hypothesis import HealthCheck, settings

from toeplitz_words.spec_io import parse_spec_file

settings.register_profile("default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def pd():
    return parse_spec_file("period_doubling")


@pytest.fixture(scope="session")
def gr():
    return parse_spec_file("grigorchuk")


@pytest.fixture(scope="session")
def nb():
    return parse_spec_file("nonb")


@pytest.fixture(scope="session")
def gg():
    return parse_spec_file("gen_grigorchuk")


@pytest.fixture(scope="session")
def fib():
    return parse_spec_file("fibonacci")


@pytest.fixture(scope="session")
def alt_gr(gr):
    # r = (0, 1, 0, 1, ...)
    return gr.with_r((0,), (1, 0))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
