import pytest

from akb import load_fixture


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


_outcomes: dict[int, tuple[str, str]] = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if call.when == "setup" and call.excinfo is not None:
        _outcomes[n] = ("FAIL", title)
    elif call.when == "call":
        _outcomes[n] = ("FAIL" if call.excinfo is not None else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        verdict, title = _outcomes[n]
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {title}")


@pytest.fixture(scope="session")
def legal():
    return load_fixture("legal")


@pytest.fixture(scope="session")
def jail():
    return load_fixture("jail")


@pytest.fixture(scope="session")
def plan():
    return load_fixture("plan")


@pytest.fixture(scope="session")
def dog():
    return load_fixture("dog")
