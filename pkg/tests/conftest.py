import functools

import pytest

from jacobizeros.numerics import PrecisionConfig
from jacobizeros.zeros import solve_pi


@functools.lru_cache(maxsize=None)
def _zero_set(m, bits):
    precision = PrecisionConfig.for_roots(m) if bits is None else PrecisionConfig(bits)
    return solve_pi(m, precision)


@pytest.fixture(scope="session")
def zero_set():
    """Session-wide cache of ``solve_pi`` results keyed by ``(m, bits)``."""

    def get(m, bits=None):
        return _zero_set(m, bits)

    return get


_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    passed, _ = _CRITERIA.get(n, (True, title))
    if report.failed or (report.when == "call" and report.skipped):
        passed = False
    _CRITERIA[n] = (passed, title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        passed, title = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {title}")
