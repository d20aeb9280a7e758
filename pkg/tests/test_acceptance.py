"""Acceptance criteria 1-12, each at its stated exact tolerance.

Every test prints a single PASS/FAIL line (visible even under output capture)
and then asserts the verdict.  Nothing is relaxed to make a line pass.
"""

import pytest

from picard_fuchs.suite import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.detail


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        print(run_criterion(n).line())
