import sys
import itertools

import numpy as np
import pytest

from betajacobi.operator import OperatorConfig

NS = (2, 5, 10, 50)
PARAMS = (-1.0, -0.5, 0.0, 1.0, 2.5)
X_GRID = np.round(np.linspace(0.0, 1.0, 11), 12)


def grid_configs():
    return [OperatorConfig.make(n, a, b) for n, a, b in itertools.product(NS, PARAMS, PARAMS)]


@pytest.fixture(scope="session")
def configs():
    return grid_configs()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
