from __future__ import annotations

import pytest

from dashgen import build_forest, parse_definition

from _corpus import F1_TEXT

_acceptance: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(criterion, title): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        previous = _acceptance.get(key, ("PASS", title))[0]
        verdict = "PASS" if report.passed and previous == "PASS" else "FAIL"
        _acceptance[key] = (verdict, title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance, key=lambda k: int(k.lstrip("AC"))):
        verdict, title = _acceptance[key]
        terminalreporter.write_line(f"{key:<5} {verdict}  {title}")


@pytest.fixture
def f1():
    return parse_definition(F1_TEXT)


@pytest.fixture
def f1_roots(f1):
    return build_forest(f1)
