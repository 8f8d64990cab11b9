import pytest

from ladderdist.families import build_table

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def table():
    return build_table(61)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: end-to-end criterion with a pass/fail summary line")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.get_closest_marker("acceptance"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        label = item.callspec.id if hasattr(item, "callspec") else ""
        head = f"{doc} [{label}]" if label else doc
        _ACCEPTANCE.append(f"{'PASS' if rep.passed else 'FAIL'}  {head}  ({rep.duration:.2f}s)")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
