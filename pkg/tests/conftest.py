import pytest

# criterion number -> [(test name, outcome)]
_CRITERIA: dict[int, list[tuple[str, str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    rep = outcome.get_result()
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        # an expected failure is still a failed criterion
        status = "xfail" if hasattr(rep, "wasxfail") else rep.outcome
        _CRITERIA.setdefault(marker.args[0], []).append((item.name, status))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        results = _CRITERIA[number]
        failing = [name for name, status in results if status != "passed"]
        line = f"criterion {number:>2}: {'FAIL' if failing else 'PASS'}"
        if failing:
            line += f"  (not passing: {', '.join(failing)})"
        terminalreporter.write_line(line)
