import pytest

from hyperpoincare import H48, growth_series

_ACCEPTANCE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")
    config.stash[_ACCEPTANCE_KEY] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    results = item.config.stash[_ACCEPTANCE_KEY].setdefault(number, [title, True])
    results[1] = results[1] and rep.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash[_ACCEPTANCE_KEY]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def h48():
    return H48()


@pytest.fixture(scope="session")
def h48_growth(h48):
    return growth_series(h48, 25)


@pytest.fixture(scope="session")
def h48_series(h48_growth):
    return h48_growth.as_series()
