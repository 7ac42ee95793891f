import pytest

from morphic_conjugacy import presets
from morphic_conjugacy.factors import MembershipOracle
from morphic_conjugacy.morphism import fixed_point_prefix

PREFIX_LEN = 10**6

_acceptance_lines: list[str] = []


def record_criterion(number: int, name: str, ok: bool, detail: str = ""):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {name}"
    if detail:
        line += f"  [{detail}]"
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def oracle():
    return MembershipOracle(presets.f, "0", presets.g, "01", "ab")


@pytest.fixture(scope="session")
def underlying_prefix():
    return fixed_point_prefix(presets.F, "0", PREFIX_LEN)[:PREFIX_LEN]


@pytest.fixture(scope="session")
def coded_prefix(underlying_prefix):
    return presets.G.apply(underlying_prefix)[:PREFIX_LEN]
