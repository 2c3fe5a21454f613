import pytest

BUDGET_SECONDS = 10.0
_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": True, "tests": 0, "seconds": 0.0})
    entry["seconds"] += call.duration
    if call.when == "call":
        entry["tests"] += 1
    if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        in_time = e["seconds"] < BUDGET_SECONDS
        verdict = "PASS" if e["passed"] and e["tests"] and in_time else "FAIL"
        note = "" if in_time else f", over the {BUDGET_SECONDS:.0f}s budget"
        terminalreporter.write_line(
            f"criterion {number}: {verdict}  {e['title']} ({e['tests']} tests, {e['seconds']:.2f}s{note})"
        )


def pytest_sessionfinish(session, exitstatus):
    if any(e["seconds"] >= BUDGET_SECONDS for e in _CRITERIA.values()) and exitstatus == 0:
        session.exitstatus = 1
