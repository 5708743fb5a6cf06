"""Acceptance gate: one pass/fail line per criterion."""

import pytest

from fusioncat.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, include_e7, capsys):
    res = run_criterion(number, include_e7=include_e7)
    with capsys.disabled():
        print("\n" + res.line())
        for note in res.notes:
            print(f"    note: {note}")
    assert res.passed, "\n".join(res.failures)
