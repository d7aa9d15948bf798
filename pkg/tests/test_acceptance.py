"""Acceptance gate: each criterion runs in full and must finish inside its
time limit.  One PASS/FAIL line per criterion is printed in the terminal
summary (and directly when run as a script)."""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from acceptance_checks import CRITERIA  # noqa: E402

RESULTS: dict = {}


def run_criterion(number, name, fn, limit):
    t0 = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t0
    passed = bool(ok) and elapsed < limit
    line = f"criterion {number} [{'PASS' if passed else 'FAIL'}] {name}: {detail} ({elapsed:.2f}s, limit {limit}s)"
    RESULTS[number] = line
    print(line)
    return passed, line


@pytest.mark.parametrize("number,name,fn,limit", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(number, name, fn, limit):
    passed, line = run_criterion(number, name, fn, limit)
    assert passed, line


if __name__ == "__main__":
    results = [run_criterion(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
