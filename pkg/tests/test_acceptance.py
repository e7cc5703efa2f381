"""Acceptance criteria, one test each.

Every criterion prints a single ``[PASS]``/``[FAIL]`` line; the lines are
repeated in the terminal summary.  Run directly with
``python tests/test_acceptance.py`` for the lines alone.
"""

import sys

import pytest

from toricqm import acceptance

# wall-clock budgets stated with the criteria
TIME_LIMITS = {1: 5.0, 2: 10.0}

RESULTS: list[acceptance.CriterionResult] = []


@pytest.mark.parametrize("number", [num for num, _, _ in acceptance.CRITERIA])
def test_criterion(number):
    result = acceptance.run_criterion(number)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.detail
    if number in TIME_LIMITS:
        assert result.seconds < TIME_LIMITS[number], f"took {result.seconds:.2f}s"


def test_oracles_are_independent_of_the_pipeline():
    # the factorial oracle and the hand-expanded I_small are plain integer arithmetic
    assert [acceptance.quintic_p_oracle(d) for d in range(4)] == [1, 120, 113400, 168168000]
    assert len(acceptance.quintic_i_small_oracle(3)) == 4


if __name__ == "__main__":
    results = acceptance.run_all()
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
