import re

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criteria")


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.failed:
        _criteria[key] = "FAIL"
    elif report.when == "call" and key not in _criteria:
        _criteria[key] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {num:2d} {name}: {verdict}")
