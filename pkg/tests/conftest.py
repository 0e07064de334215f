import pytest

from k3arith.lattice import direct_sum, make_standard


@pytest.fixture
def U():
    return make_standard("U")


@pytest.fixture
def UU():
    U = make_standard("U")
    return direct_sum(U, U)


@pytest.fixture
def UUU():
    U = make_standard("U")
    return direct_sum(U, U, U)


ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if name.startswith("test_criterion_"):
        num = int(name.split("_")[2])
        ACCEPTANCE[num] = ("PASS" if report.passed else "FAIL", name)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, name = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  ({name})")
