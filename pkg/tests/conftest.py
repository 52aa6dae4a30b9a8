import math

import pytest

from subosc.synthesis import make_plan, synthesize
from subosc.targets import AnalyticTarget

ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def one():
    return AnalyticTarget.constant(1.0)


@pytest.fixture(scope="session")
def fig1_plan(one):
    return make_plan(2 * math.pi, 19, 4.0, (-1.0, 1.0), one)


@pytest.fixture(scope="session")
def fig1(one, fig1_plan):
    return synthesize(one, fig1_plan, "one_sided")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for marker in report.keywords:
        if marker.startswith("criterion_"):
            ACCEPTANCE_RESULTS[int(marker.split("_")[1])] = (report.passed, report.nodeid)


def pytest_configure(config):
    for k in range(1, 11):
        config.addinivalue_line("markers", f"criterion_{k}: acceptance criterion {k}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, nodeid = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {nodeid}")
