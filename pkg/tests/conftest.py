import warnings

import pytest

from anisosense.errors import NonlocalRegimeWarning

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, text): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args))


def pytest_runtest_logreport(report):
    for key, value in report.user_properties:
        if key != "criterion":
            continue
        label, text = value
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            _CRITERIA[label] = (text, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: (int("".join(c for c in s if c.isdigit())), s)):
        text, outcome = _CRITERIA[label]
        status = "PASS" if outcome == "passed" else "FAIL"
        tr.write_line(f"[{status}] criterion {label}: {text}")


@pytest.fixture
def quiet_nonlocal():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonlocalRegimeWarning)
        yield
