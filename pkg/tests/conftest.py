import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cyclomin.cyclic_matrix import WeightSequence

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=300)
settings.register_profile("dev", deadline=None, max_examples=20)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def weight_sequences(n=6, low=0.0, high=100.0, min_gap=1e-3):
    """Strictly increasing weights with gaps bounded away from zero."""
    gaps = st.lists(st.floats(min_gap, high / n, allow_nan=False), min_size=n - 1, max_size=n - 1)
    start = st.floats(low, high / n, allow_nan=False)
    return st.builds(lambda s, g: WeightSequence(tuple(np.cumsum([s] + g))), start, gaps)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_weights(rng, size, n=6):
    a = np.sort(rng.random((size, n)), axis=1)
    ok = np.min(np.diff(a, axis=1), axis=1) > 1e-9
    return a[ok]


def dense_lambda_max(a_row, images):
    """Largest eigenvalue of A + A^T built entry by entry (independent of the package)."""
    n = len(images)
    m = np.zeros((n, n))
    for i in range(n):
        j = (i + 1) % n
        m[i, j] += a_row[images[i] - 1]
        m[j, i] += a_row[images[i] - 1]
    return np.linalg.eigvalsh(m)[-1]


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
