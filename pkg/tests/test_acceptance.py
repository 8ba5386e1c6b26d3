"""The twelve acceptance criteria, run at full depth with exact comparison."""

import time

import pytest

from kops.acceptance import CHECKS, run_check

RESULTS: list[str] = []
_START = time.perf_counter()


@pytest.mark.parametrize("index", range(len(CHECKS)), ids=[f"{i + 1:02d}_{name}" for i, (name, _) in enumerate(CHECKS)])
def test_criterion(index):
    result = run_check(index, "full")
    line = f"{result.status.upper()} {result.name} ({result.elapsed:.2f}s)"
    RESULTS.append(line)
    print(line)
    assert result.passed, "\n".join(result.failures[:10])
    if index == 0:
        assert result.elapsed < 5, f"duality took {result.elapsed:.2f}s"


def test_full_depth_budget():
    # the whole suite above has to fit the ten minute budget
    assert time.perf_counter() - _START < 600
