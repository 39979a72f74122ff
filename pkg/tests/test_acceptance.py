"""Acceptance criteria, one test per criterion.

Each test prints one pass/fail line plus its details; the pass/fail lines
are also repeated in the terminal summary.
"""
import subprocess
import sys

import pytest

from electscore import acceptance


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in acceptance.run_criteria()}


def _report(result, log):
    log.append(result.line())
    print(result.line())
    for d in result.details:
        print("    " + d)
    return result.passed


@pytest.mark.parametrize("number", [1, 2, 3, 4, 5, 6])
def test_criterion(results, number, acceptance_log):
    assert _report(results[number], acceptance_log)


def test_criterion_7_selftest_is_deterministic(acceptance_log):
    cmd = [sys.executable, "-m", "electscore", "selftest"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    same = first.stdout == second.stdout
    line = (f"[{'PASS' if same and first.returncode == 0 else 'FAIL'}] criterion 7: "
            "two selftest runs produce byte-identical reports")
    acceptance_log.append(line)
    print(line)
    assert first.returncode == 0, first.stdout.decode() + first.stderr.decode()
    assert same
    assert b"[PASS] criterion 7" in first.stdout
