import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# criterion id -> {part: outcome}
_RESULTS: dict = {}
_TITLES: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, part, title): acceptance criterion sub-check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    cid, part, title = mark.args
    _TITLES[cid] = title
    parts = _RESULTS.setdefault(cid, {})
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        parts[part] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_RESULTS, key=int):
        parts = _RESULTS[cid]
        status = "PASS" if all(v == "PASS" for v in parts.values()) else "FAIL"
        detail = ""
        if len(parts) > 1:
            detail = "  [" + ", ".join(f"{p} {v}" for p, v in parts.items()) + "]"
        tr.write_line(f"{status}  criterion {cid:>2}  {_TITLES[cid]}{detail}")
