import random

import pytest

from pathvariety.freealg import FreeTensor

_acceptance = []


def T(text, dim=2, coeff=1):
    """Single-word tensor from a digit string; ``""`` is the empty word."""
    return FreeTensor.word(text, dim, coeff)


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _acceptance.append((number, title, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    merged = {}
    for number, title, outcome, duration in _acceptance:
        ok, total = merged.get(number, (True, 0.0))
        merged[number] = (ok and outcome == "passed", total + duration)
        merged.setdefault(("title", number), title)
    terminalreporter.section("acceptance criteria")
    for number in sorted(k for k in merged if isinstance(k, int)):
        ok, duration = merged[number]
        status = "PASS" if ok else "FAIL"
        title = merged[("title", number)]
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({duration:.1f}s)")
