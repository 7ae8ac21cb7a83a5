"""Acceptance gate: every criterion runs at its stated tolerance and budget
and prints one pass/fail line (visible with pytest -s, and mirrored by the
``loopcert reproduce-all`` driver)."""

import time

import pytest

from loopcert import acceptance

SEED = 20260808


def _run(criterion_fn, cid, desc, budget):
    t0 = time.time()
    ok, detail = criterion_fn(SEED, 256, 1)
    elapsed = time.time() - t0
    print(f"{'PASS' if ok and elapsed <= budget else 'FAIL'} {cid} [{elapsed:6.1f}s/{budget}s] {desc}: {detail}")
    assert ok, detail
    assert elapsed <= budget, f"{cid} exceeded its {budget}s budget ({elapsed:.1f}s)"


@pytest.mark.parametrize("cid,desc,fn,budget", acceptance.CRITERIA, ids=[c[0] for c in acceptance.CRITERIA])
def test_acceptance_criterion(cid, desc, fn, budget):
    _run(fn, cid, desc, budget)
