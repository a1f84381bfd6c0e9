"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

import pytest

CRITERIA: dict[int, str] = {}
_OUTCOMES: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            number, title = mark.args
            CRITERIA[number] = title
            item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    numbers = [v for k, v in report.user_properties if k == "criterion"]
    if not numbers:
        return
    if report.when == "call" or report.outcome != "passed":
        _OUTCOMES.setdefault(numbers[0], []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        results = _OUTCOMES.get(number, [])
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} {status:7s} {CRITERIA[number]} ({len(results)} tests)")


@pytest.fixture(scope="session")
def g():
    from polycontact.susy import build_generators

    return build_generators()


@pytest.fixture(scope="session")
def alpha():
    from polycontact.susy import polycontact_form

    return polycontact_form()
