import os

import pytest
from hypothesis import HealthCheck, settings

from sblab.corpus import default_corpus
from sblab.poly import QQ, Ring

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def R2():
    return Ring(("x", "y"), QQ)


@pytest.fixture
def R1():
    return Ring(("x",), QQ)


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


# -- acceptance summary ---------------------------------------------------------

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE[marker.args[0]] = (rep.outcome.upper(), marker.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        status, title = _ACCEPTANCE[key]
        line = f"{'PASS' if status == 'PASSED' else 'FAIL'}  {key}  {title}"
        terminalreporter.write_line(line)
