import pytest

from tripodph import build_filtered_space

ACCEPTANCE_LINES = []


@pytest.fixture
def two_point():
    """{a: 0, b: 0, ab: 1}."""
    return build_filtered_space(["a", "b"], [(["a"], 0), (["b"], 0), (["a", "b"], 1)], 1)


@pytest.fixture
def two_point_flat():
    return build_filtered_space(["a", "b"], [(["a"], 0), (["b"], 0), (["a", "b"], 0)], 1)


@pytest.fixture
def one_point():
    return build_filtered_space(["*"], [(["*"], 0)], 0)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
