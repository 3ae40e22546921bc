import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = (str(mark.args[0]), mark.args[1])
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        prev = _RESULTS.get(key, True)
        _RESULTS[key] = prev and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), ok in sorted(_RESULTS.items(), key=lambda kv: (int(kv[0][0][0]), kv[0][0])):
        terminalreporter.write_line(f"criterion {num:<3} {'PASS' if ok else 'FAIL'}  {title}")
