"""Membership tests for restricted preference domains.

Every failing verdict carries a witness that can be re-checked against the
election without trusting the validator.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .ballots import Election
from .errors import DomainViolation, UnsupportedBallotKind


@dataclass(frozen=True)
class KChotomousViolation:
    voter: int
    n_groups: int


@dataclass(frozen=True)
class PeakViolation:
    """Voter states a > b but not b > c, although b lies between a and c on the axis."""

    voter: int
    triple: tuple[int, int, int]


@dataclass(frozen=True)
class CrossingViolation:
    """The preference over ``pair`` flips between voters i-1 and i for both i in ``flips``."""

    pair: tuple[int, int]
    flips: tuple[int, int]


@dataclass(frozen=True)
class DomainVerdict:
    holds: bool
    violation: object = None

    def __bool__(self):
        return self.holds


def check_kchotomous(election: Election, k: int) -> DomainVerdict:
    if k < 1:
        raise ValueError("k must be positive")
    for v, ballot in enumerate(election.ballots):
        if len(ballot.groups) > k:
            return DomainVerdict(False, KChotomousViolation(v, len(ballot.groups)))
    return DomainVerdict(True)


def _require_total(election: Election, what: str) -> None:
    for v, ballot in enumerate(election.ballots):
        if not ballot.is_total:
            raise UnsupportedBallotKind(f"{what} is only defined for total orders (voter {v})")


def check_single_peaked(election: Election, axis=None) -> DomainVerdict:
    """Scan every axis triple a L b L c (both orientations) in every ballot."""
    axis = election.axis if axis is None else tuple(axis)
    if axis is None:
        raise ValueError("single-peakedness needs an axis")
    if sorted(axis) != list(range(election.m)):
        raise ValueError("axis must be a permutation of the roster")
    _require_total(election, "single-peakedness")
    for v, ballot in enumerate(election.ballots):
        level = ballot.level
        for i, j, k in combinations(range(len(axis)), 3):
            for a, b, c in ((axis[i], axis[j], axis[k]), (axis[k], axis[j], axis[i])):
                if level[a] < level[b] and not level[b] < level[c]:
                    return DomainVerdict(False, PeakViolation(v, (a, b, c)))
    return DomainVerdict(True)


def check_single_crossing(election: Election) -> DomainVerdict:
    """Single-crossing with respect to the ballot order."""
    _require_total(election, "single-crossing")
    for a, b in combinations(range(election.m), 2):
        flips = []
        prev = None
        for v, ballot in enumerate(election.ballots):
            cur = ballot.prefers(a, b)
            if prev is not None and cur != prev:
                flips.append(v)
                if len(flips) == 2:
                    return DomainVerdict(False, CrossingViolation((a, b), tuple(flips)))
            prev = cur
    return DomainVerdict(True)


def median_voters(n: int) -> tuple[int, ...]:
    """0-based positions of the median voter (odd n) or the two median voters (even n)."""
    if n < 1:
        raise ValueError("median voters need at least one voter")
    if n % 2:
        return (n // 2,)
    return (n // 2 - 1, n // 2)


def require_single_peaked(election: Election, axis=None) -> tuple[int, ...]:
    axis = election.axis if axis is None else tuple(axis)
    if axis is None:
        raise DomainViolation("no single-peaked axis given")
    try:
        verdict = check_single_peaked(election, axis)
    except UnsupportedBallotKind as exc:
        raise DomainViolation(str(exc)) from exc
    if not verdict:
        w = verdict.violation
        names = "/".join(election.candidates[c] for c in w.triple)
        raise DomainViolation(f"not single-peaked: voter {w.voter} on triple {names}", verdict)
    return axis


def require_single_crossing(election: Election) -> None:
    try:
        verdict = check_single_crossing(election)
    except UnsupportedBallotKind as exc:
        raise DomainViolation(str(exc)) from exc
    if not verdict:
        w = verdict.violation
        a, b = (election.candidates[c] for c in w.pair)
        raise DomainViolation(f"not single-crossing: pair {a}/{b} flips at voters {w.flips}", verdict)


def require_dichotomous(election: Election) -> None:
    verdict = check_kchotomous(election, 2)
    if not verdict:
        w = verdict.violation
        raise DomainViolation(f"not dichotomous: voter {w.voter} has {w.n_groups} groups", verdict)
