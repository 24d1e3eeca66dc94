import pytest

from bisimctl.samples import closed_loop_system, plant_system, spec_system

# criterion number -> (description, passed, detail); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture
def spec():
    return spec_system()


@pytest.fixture
def plant():
    return plant_system()


@pytest.fixture
def closed_loop():
    return closed_loop_system()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        description, passed, detail = ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {description} ({detail})")
