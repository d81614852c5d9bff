import pytest
from hypothesis import settings

from sylowgamma.groups import parse_group

settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

G0_TEXT = "A5 * C2 * C7 * C11 * C13 * C17 * C19 * C29 * C71 * C83"
Q0 = (7, 11, 13, 17, 19, 29, 71, 83)
Q_SETS = {
    1: (7, 11, 13, 17, 19, 29, 71, 83),
    2: (7, 11, 13, 17, 19, 23, 83, 179),
    3: (7, 11, 13, 17, 19, 29, 41, 503),
    4: (7, 11, 13, 17, 19, 23, 59, 1259),
}


@pytest.fixture(scope="session")
def g0():
    return parse_group(G0_TEXT)


_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and (rep.when == "call" or rep.failed):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance.append((item.name, doc, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, doc, outcome in _acceptance:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {doc}")
