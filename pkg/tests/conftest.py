"""Per-criterion PASS/FAIL reporting for the acceptance suite.

Tests tagged ``@pytest.mark.criterion(k, "title")`` are grouped by ``k``; a
criterion passes only if every test carrying its number passes.
"""

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _RESULTS.setdefault(number, {"title": title, "failed": [], "ran": 0})
    if rep.when == "call":
        entry["ran"] += 1
    if rep.failed or (rep.when == "setup" and rep.skipped):
        entry["failed"].append(item.name)


def criterion_lines() -> list[str]:
    lines = []
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        ok = not entry["failed"] and entry["ran"] > 0
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {entry['title']}"
        if entry["failed"]:
            line += f"  [failed: {', '.join(sorted(set(entry['failed'])))}]"
        lines.append(line)
    return lines


def pytest_terminal_summary(terminalreporter):
    lines = criterion_lines()
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
