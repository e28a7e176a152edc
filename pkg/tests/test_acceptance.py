"""Acceptance gate: the eight criteria at their tolerances and time budgets.

Each criterion runs through ``pincohom.checks`` (the same code behind
``pincohom paper-checks``); the result line is printed in the terminal
summary whether it passes or not.
"""

import pytest

from pincohom import checks, grp
from pincohom.cohom import Z2, h1, h2

RESULTS = []

CRITERIA = [
    (1, "q8-restriction-zero", 1.0),
    (2, "gamma2-four-covers", 1.0),
    (3, "alpha-injective", 30.0),
    (4, "alpha-additive-natural", 30.0),
    (5, "lifting-2sign-c2", 1.0),
    (6, "w1-equals-det", 5.0),
    (7, "cocycle-fuzz", 60.0),
    (8, "conjugation-invariance", 10.0),
]


def pytest_terminal_summary_lines():
    return [f"criterion {n}: {line}" for n, line in sorted(RESULTS)]


def test_budgets_match_criteria():
    by_name = {c.name: c.budget for c in checks.CHECKS}
    assert by_name == {name: budget for _, name, budget in CRITERIA}


@pytest.mark.parametrize("number,name,budget", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, name, budget):
    check = next(c for c in checks.CHECKS if c.name == name)
    result = checks.run_check(check, seed=0)
    RESULTS.append((number, result.line()))
    print(result.line())
    assert result.passed, result.detail
    assert result.seconds < budget, f"{result.seconds:.2f}s exceeds {budget}s"


def test_criterion_1_values_directly():
    Q = grp.quaternion()
    assert h1(Q, Z2).dimension == 2 and h2(Q, Z2).dimension == 2


def test_fault_injection_trips_criterion_1():
    check = checks.CHECKS[0]
    assert not checks.run_check(check, fault="q8-sign").ok
