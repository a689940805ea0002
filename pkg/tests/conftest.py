from collections import defaultdict

import pytest

CRITERIA = {
    1: "bijection and greedy = oracle while delta <= 1e5",
    2: "Fibonacci closed form and binomial identity",
    3: "Lekkerkerker constant for Fibonacci",
    4: "decimal mean and variance",
    5: "Gaussian diagnostics at n = 1000",
    6: "generating functions reproduce the tables",
    7: "roots, growth rate and simple-root checks",
    8: "far-difference uniqueness and n = 1000 statistics",
    9: "CLI output is deterministic",
}

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None:
        return
    if report.when == "call" or report.failed:
        _outcomes[number].append((report.nodeid.split("::")[-1], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, label in CRITERIA.items():
        results = _outcomes.get(number)
        if not results:
            tr.write_line(f"criterion {number}: NOT RUN  {label}")
            continue
        ok = all(passed for _, passed in results)
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {label}"
        failed = [name for name, passed in results if not passed]
        if failed:
            line += f"  (failing: {', '.join(failed)})"
        tr.write_line(line)
