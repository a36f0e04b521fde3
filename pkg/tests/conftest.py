import pytest
from hypothesis import HealthCheck, settings

from expresso import fixtures

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")


@pytest.fixture
def klein():
    return fixtures.klein()


@pytest.fixture
def five_cycle():
    return fixtures.five_cycle()


@pytest.fixture
def r1(klein):
    return klein["R1"]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
