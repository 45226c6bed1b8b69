import numpy as np
import pytest

from proglab import _backend

BACKENDS = sorted(_backend.BACKENDS)


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def naive_evolve(code, radius, row, steps):
    """Cell-by-cell reference: table lookup on np.roll'd neighbors."""
    n = 2 * radius + 1
    rows = [np.asarray(row, dtype=np.uint8)]
    for _ in range(steps):
        cur = rows[-1].astype(np.int64)
        idx = np.zeros_like(cur)
        for j in range(n):
            idx = idx * 2 + np.roll(cur, radius - j)
        rows.append(((code >> idx) & 1).astype(np.uint8))
    return np.array(rows)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
