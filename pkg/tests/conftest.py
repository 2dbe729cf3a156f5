import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from qbcap.linalg import DensityMatrix  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def make_rho_b(b: float) -> DensityMatrix:
    m = np.zeros((4, 4))
    m[0, 0] = m[3, 3] = 0.5
    m[0, 3] = m[3, 0] = b / 2
    return DensityMatrix.from_array(m)


def make_rho_a(a: float) -> DensityMatrix:
    m = np.array([[2, a, 0, 0], [a, 1, 0, 0], [0, 0, 1, a], [0, 0, a, 2]], dtype=float) / 6
    return DensityMatrix.from_array(m)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
