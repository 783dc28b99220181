"""Acceptance run: one PASS/FAIL line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` or directly as a script.
"""
import sys
from collections import defaultdict
from typing import Dict, List

import pytest

from fockhall import checks

MAX_SIZE = 6

# (criterion, n values, check names)
PLAN = [
    (1, (2, 3), ["hecke"]),
    (2, (2, 3), ["straightening"]),
    (3, (2, 3), ["center_element"]),
    (4, (2, 3), ["center_dimensions"]),
    (5, (2, 3), ["commutator"]),
    (6, (2, 3), ["boson_commute"]),
    (7, (2, 3), ["canonical"]),
    (8, (2, 3), ["ladder"]),
    (9, (2, 3), ["boson_vacuum", "center_leading"]),
    (10, (2, 3), ["chain"]),
    (11, (2,), ["column_coproduct", "orbit_counts"]),
    (12, (2,), ["green"]),
]

# seconds, summed over n
TIME_LIMITS = {1: 60.0, 2: 300.0, 4: 600.0}
BLOCK_LIMIT = ((7, 8, 9, 10), 1800.0)

_results: Dict[int, List[checks.CheckResult]] = defaultdict(list)


def run_criterion(k: int) -> List[checks.CheckResult]:
    if k not in _results:
        _, ns, names = PLAN[k - 1]
        for n in ns:
            for name in names:
                r = checks.CHECKS[name](n, MAX_SIZE)
                assert r.criterion == k, (name, r.criterion)
                _results[k].append(r)
    return _results[k]


def summary_line(k: int, results: List[checks.CheckResult]) -> str:
    ok = all(r.ok for r in results) and within_limit(k, results)
    secs = sum(r.seconds for r in results)
    parts = "; ".join(f"{r.name}: {'ok' if r.ok else 'FAILED'} ({r.detail})" for r in results)
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'} [{secs:.1f}s] {parts}"


def within_limit(k: int, results: List[checks.CheckResult]) -> bool:
    limit = TIME_LIMITS.get(k)
    return limit is None or sum(r.seconds for r in results) < limit


@pytest.mark.parametrize("k", [p[0] for p in PLAN])
def test_criterion(k, capsys):
    results = run_criterion(k)
    with capsys.disabled():
        print("\n" + summary_line(k, results))
    for r in results:
        assert r.ok, f"{r.name}: {r.detail}"
    assert within_limit(k, results), f"runtime {sum(r.seconds for r in results):.1f}s over {TIME_LIMITS[k]}s"


def test_canonical_block_runtime(capsys):
    block, limit = BLOCK_LIMIT
    total = sum(r.seconds for k in block for r in run_criterion(k))
    with capsys.disabled():
        print(f"\ncriteria 7-10 combined runtime: {total:.1f}s (limit {limit:.0f}s)")
    assert total < limit


def main() -> int:
    ok = True
    for k, _, _ in PLAN:
        results = run_criterion(k)
        line = summary_line(k, results)
        ok &= line.split()[2] == "PASS"
        print(line, flush=True)
    block, limit = BLOCK_LIMIT
    total = sum(r.seconds for k in block for r in _results[k])
    print(f"criteria 7-10 combined runtime: {total:.1f}s (limit {limit:.0f}s)")
    return 0 if ok and total < limit else 1


if __name__ == "__main__":
    sys.exit(main())
