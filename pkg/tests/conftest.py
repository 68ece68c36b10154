import pytest

from bdgroups.group_core import make_group

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    n, title = getattr(report, "criterion", (None, None))
    if n is None:
        return
    entry = _criteria.setdefault(n, {"title": title, "passed": 0, "failed": []})
    if report.passed:
        entry["passed"] += 1
    else:
        entry["failed"].append(report.nodeid.split("::")[-1])


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = tuple(marker.args)
    return report


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        status = "PASS" if not e["failed"] else "FAIL"
        line = f"criterion {n}: {status}  {e['title']}  ({e['passed']} passed, {len(e['failed'])} failed)"
        if e["failed"]:
            line += "  failing: " + ", ".join(e["failed"])
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def g3():
    return make_group(3)


@pytest.fixture(scope="session")
def g5():
    return make_group(5)
