import pytest

from rcftkernel.modular_data import minimal_model


@pytest.fixture(scope="session")
def lee_yang():
    return minimal_model(2, 5)


@pytest.fixture(scope="session")
def ising():
    return minimal_model(3, 4)


def index_of(md, name):
    return next(lab.index for lab in md.labels if lab.name == name)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    lines = [VERDICTS[n] for n in range(1, 9) if n in VERDICTS]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
