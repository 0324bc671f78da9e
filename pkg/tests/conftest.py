import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from positroids.kernels import available_backends  # noqa: E402


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    """Each kernel module importable in this environment."""
    return available_backends()[request.param]


_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[number] = (title, report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome, duration = _ACCEPTANCE[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}  {verdict}  {title}  ({duration:.2f} s)")
