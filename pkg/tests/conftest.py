import pytest

from greentrade.deployment import DeploymentConfig, place_users
from greentrade.model import SystemParams

# gain implied by the unit-delay/unit-bandwidth energy table (N0/g = 2e-7)
TABLE_GAIN = 4.0e-14

_acceptance_lines = []


def record_acceptance(line):
    _acceptance_lines.append(line)


@pytest.fixture(scope="session")
def params():
    return SystemParams()


@pytest.fixture(scope="session")
def default_deployment():
    return place_users(DeploymentConfig())


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
