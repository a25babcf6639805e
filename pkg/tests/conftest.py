import pytest

_ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the summary."""

    def record(number, title):
        _ACCEPTANCE[number] = (title, request.node)

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.acceptance_passed = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, node = _ACCEPTANCE[number]
        status = "PASS" if getattr(node, "acceptance_passed", False) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
