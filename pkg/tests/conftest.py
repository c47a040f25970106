import pytest

_OUTCOMES: dict[int, dict] = {}
_NOTES: list[str] = []


@pytest.fixture
def note(request):
    """Record a line for the acceptance summary."""
    return lambda msg: _NOTES.append(f"[{request.node.name}] {msg}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n, title = mark.args
    entry = _OUTCOMES.setdefault(n, {"title": title, "passed": 0, "failed": []})
    if rep.passed:
        entry["passed"] += 1
    else:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        e = _OUTCOMES[n]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {n}: {status}  {e['title']} ({e['passed']} checks passed"
        line += f", failed: {', '.join(e['failed'])})" if e["failed"] else ")"
        terminalreporter.write_line(line)
    for msg in _NOTES:
        terminalreporter.write_line("  " + msg)
