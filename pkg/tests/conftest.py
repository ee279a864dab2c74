import re

import pytest

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    key = (number, title)
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        ok = rep.passed and _ACCEPTANCE.get(key, True)
        _ACCEPTANCE[key] = ok


def _order(item):
    number = str(item[0][0])
    return int(re.match(r"\d+", number).group()), number


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(_ACCEPTANCE.items(), key=_order):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
