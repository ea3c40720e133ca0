import pytest

from superfat.fields import GF, QQ, QQI

ACCEPTANCE_LINES = []


def record(line: str):
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1][1:])):
            terminalreporter.write_line(line)


@pytest.fixture(params=["Q", "Qi", "Fp"])
def any_field(request):
    return {"Q": QQ, "Qi": QQI, "Fp": GF(32003)}[request.param]
