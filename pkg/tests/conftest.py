import re

import pytest

from autpgroup.groups import make_group
from autpgroup.universe import universe_for

_CRITERIA: dict[int, tuple[str, str]] = {}
_NAME = re.compile(r"test_criterion_(\d+)")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = _NAME.match(item.name)
    if m is None:
        return
    n = int(m.group(1))
    doc = (item.function.__doc__ or "").strip().splitlines()
    title = doc[0] if doc else item.name
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _CRITERIA[n] = ("PASS" if rep.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, title = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")


@pytest.fixture(scope="session")
def g3():
    return make_group(3, [1])


@pytest.fixture(scope="session")
def g33():
    return make_group(3, [1, 1])


@pytest.fixture(scope="session")
def g39():
    return make_group(3, [1, 2])


@pytest.fixture(scope="session")
def g333():
    return make_group(3, [1, 1, 1])


@pytest.fixture(scope="session")
def u3(g3):
    return universe_for(g3)


@pytest.fixture(scope="session")
def u33(g33):
    return universe_for(g33)


@pytest.fixture(scope="session")
def u39(g39):
    return universe_for(g39)
