"""Every acceptance criterion at its stated tolerance and time budget.

Each test prints one PASS/FAIL line; the same lines are repeated in the
terminal summary by conftest.py.
"""

import pytest

from coxspec.acceptance import CRITERIA

RESULTS = {}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = CRITERIA[number]()
    RESULTS[number] = result
    print(result.line())
    assert result.passed, result.line()
