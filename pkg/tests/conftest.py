import pytest

from mmspace import curvature
from mmspace.complex import OUT, OUT0

# (criterion label, passed, detail) collected by tests/test_acceptance.py
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")


@pytest.fixture(scope="session")
def out_system():
    return curvature.build_system(OUT)


@pytest.fixture(scope="session")
def out0_system():
    return curvature.build_system(OUT0)


@pytest.fixture(scope="session")
def out_result(out_system):
    return curvature.feasible(out_system)


@pytest.fixture(scope="session")
def out0_result(out0_system):
    return curvature.feasible(out0_system)
