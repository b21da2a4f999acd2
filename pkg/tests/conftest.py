import pytest
from hypothesis import HealthCheck, settings

from eulertorsion.words import GenusContext

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def contexts():
    return {g: GenusContext(g) for g in (1, 2, 3, 4)}


@pytest.fixture(params=[1, 2, 3])
def ctx(request, contexts):
    return contexts[request.param]


# -- acceptance reporting: one PASS/FAIL line per criterion ------------------
_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "failed": []})
    if call.excinfo is not None:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {n:>2}: {status}  {e['title']}"
        if e["failed"]:
            line += "  (failing: " + ", ".join(e["failed"]) + ")"
        terminalreporter.write_line(line)
