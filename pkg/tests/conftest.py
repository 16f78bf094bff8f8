import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(ident, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or rep.failed or rep.skipped):
        return
    ident, title = marker.args
    _, ok = _CRITERIA.get(ident, (title, True))
    _CRITERIA[ident] = (title, ok and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for ident in sorted(_CRITERIA, key=lambda k: int(k[1:])):
        title, ok = _CRITERIA[ident]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {ident} {title}")
