"""Acceptance gate: every desk-scale claim, exact integer arithmetic.

One test per criterion; each prints its own pass/fail line (visible with
``pytest -s`` or in the CLI's ``reproduce-paper`` table, which runs the same
functions).  All comparisons are exact; there are no tolerances.
"""

from __future__ import annotations

import pytest

from whitneydual.reproduce import CRITERIA, Context


@pytest.fixture(scope="module")
def ctx():
    return Context(max_n=5)


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[name for name, _ in CRITERIA])
def test_criterion(name, fn, ctx):
    ok, detail = fn(ctx)
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, f"{name}: {detail}"
