import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_results: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    summary = (item.function.__doc__ or item.name).strip().splitlines()[0]
    _results[marker.args[0]] = ("PASS" if report.passed else "FAIL", summary)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        status, summary = _results[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {summary}")
