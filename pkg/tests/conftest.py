import itertools

import pytest

from ssgboca.qbf import EXISTS, FORALL, Literal, Qbf3Cnf
from ssgboca.ssg import SsgInstance, Strategy

L = Literal

# (x1 | ~x2 | ~x3) & (~x1 | ~x2 | ~x3) & (~x1 | ~x2 | x3) & (x1 | x2 | x3)
FOUR_CLAUSES = (
    (L("x1"), L("x2", False), L("x3", False)),
    (L("x1", False), L("x2", False), L("x3", False)),
    (L("x1", False), L("x2", False), L("x3")),
    (L("x1"), L("x2"), L("x3")),
)


def four_clause_formula(quantifiers=(FORALL, EXISTS, FORALL)) -> Qbf3Cnf:
    return Qbf3Cnf(tuple(zip(("x1", "x2", "x3"), quantifiers)), FOUR_CLAUSES)


@pytest.fixture
def phi():
    return four_clause_formula()


@pytest.fixture
def small_game():
    # forall{1,2} exists{2,1}, T = 3
    return SsgInstance(((1, 2, 2, 1),), 3)


def all_strategies(n: int):
    """Every existential strategy for an ``n``-round game (2^(2^(n+1)-2) of them)."""
    prefixes = ["".join(p) for i in range(1, n + 1) for p in itertools.product("AB", repeat=i)]
    for choice in itertools.product("EF", repeat=len(prefixes)):
        table = dict(zip(prefixes, choice))
        yield Strategy.from_function(n, table.__getitem__)


# -- acceptance reporting ---------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.get_closest_marker("criterion"):
        number, summary = item.get_closest_marker("criterion").args
        status = "PASS" if report.passed else "FAIL"
        extra = getattr(item, "criterion_detail", "")
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number:2d}: {summary}{extra}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, summary): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
