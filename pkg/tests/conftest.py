import pytest

from siltkit.fixtures import build_paper_family, preprojective
from siltkit.silting import nakayama_for


@pytest.fixture(scope="session")
def fam4():
    return build_paper_family(4, 101)


@pytest.fixture(scope="session")
def A4(fam4):
    return fam4.A


@pytest.fixture(scope="session")
def lam4(fam4):
    return fam4.Lam


@pytest.fixture(scope="session")
def nu4(lam4):
    return nakayama_for(lam4, seed=0)


@pytest.fixture(scope="session")
def pi_a2():
    return preprojective("A2", 101)


@pytest.fixture(scope="session")
def pi_d4():
    return preprojective("D4", 101)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
