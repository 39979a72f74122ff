"""Election data model, pairwise majorities, ballot edits and consensus objectives.

Candidates are dense integer ids ``0..m-1`` with display names held by the
:class:`Election`.  A :class:`Ballot` is a weak order stored as an ordered
sequence of indifference groups; total orders and dichotomous (approval)
ballots are the special cases with ``m`` and at most two groups.  Voters are
addressed by their 0-based position in ``Election.ballots``, which is also the
voter order used for single-crossing checks.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidElection, InvalidMove, InvalidPair, UnsupportedBallotKind

NAME_RE = re.compile(r"[A-Za-z0-9_.-]+\Z")

KEMENY_MIN = "kemeny-min"
NET_MAX = "net-max"
SLATER = "slater"
OBJECTIVES = (KEMENY_MIN, NET_MAX, SLATER)

UP = "up"
DOWN = "down"


@dataclass(frozen=True)
class Ballot:
    """A weak order: ``groups[0]`` is the most preferred indifference class."""

    groups: tuple[frozenset[int], ...]

    def __post_init__(self):
        groups = tuple(frozenset(g) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        if not groups:
            raise InvalidElection("a ballot needs at least one group")
        seen: set[int] = set()
        for g in groups:
            if not g:
                raise InvalidElection("ballot groups must be nonempty")
            if seen & g:
                raise InvalidElection(f"candidate {min(seen & g)} appears twice in a ballot")
            seen |= g

    @classmethod
    def from_order(cls, order: Iterable[int]) -> "Ballot":
        return cls(tuple(frozenset((c,)) for c in order))

    @classmethod
    def dichotomous(cls, approved: Iterable[int], m: int) -> "Ballot":
        """``approved > rest``; an empty side collapses to a single group."""
        approved = frozenset(approved)
        rest = frozenset(range(m)) - approved
        if not approved or not rest:
            return cls((frozenset(range(m)),))
        return cls((approved, rest))

    @cached_property
    def level(self) -> dict[int, int]:
        """Map candidate -> index of its group (0 = top)."""
        return {c: i for i, g in enumerate(self.groups) for c in g}

    @property
    def candidates(self) -> frozenset[int]:
        return frozenset(self.level)

    @property
    def is_total(self) -> bool:
        return all(len(g) == 1 for g in self.groups)

    def is_kchotomous(self, k: int) -> bool:
        return len(self.groups) <= k

    def prefers(self, a: int, b: int) -> bool:
        """True iff the ballot strictly ranks ``a`` above ``b``."""
        return self.level[a] < self.level[b]

    @property
    def order(self) -> tuple[int, ...]:
        if not self.is_total:
            raise UnsupportedBallotKind("ballot is not a total order")
        return tuple(next(iter(g)) for g in self.groups)

    def restrict(self, keep: frozenset[int]) -> "Ballot":
        return Ballot(tuple(g & keep for g in self.groups if g & keep))

    def relabel(self, mapping: dict[int, int]) -> "Ballot":
        return Ballot(tuple(frozenset(mapping[c] for c in g) for g in self.groups))

    def __repr__(self):
        return "Ballot(" + " > ".join("{" + ",".join(map(str, sorted(g))) + "}" for g in self.groups) + ")"


def _split_groups(text: str) -> list[str]:
    sep = ">" if ">" in text else "|"
    return [part.strip() for part in text.split(sep)]


@dataclass(frozen=True)
class Election:
    candidates: tuple[str, ...]
    ballots: tuple[Ballot, ...] = ()
    axis: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        object.__setattr__(self, "ballots", tuple(self.ballots))
        if self.axis is not None:
            object.__setattr__(self, "axis", tuple(self.axis))
        if not self.candidates:
            raise InvalidElection("an election needs at least one candidate")
        if len(set(self.candidates)) != len(self.candidates):
            raise InvalidElection("candidate names must be unique")
        for name in self.candidates:
            if not NAME_RE.match(name):
                raise InvalidElection(f"invalid candidate name {name!r}")
        roster = frozenset(range(self.m))
        for i, b in enumerate(self.ballots):
            if b.candidates != roster:
                raise InvalidElection(f"ballot {i} does not rank exactly the roster")
        if self.axis is not None and sorted(self.axis) != list(range(self.m)):
            raise InvalidElection("axis must be a permutation of the roster")

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def n(self) -> int:
        return len(self.ballots)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.candidates)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InvalidElection(f"unknown candidate {name!r}") from None

    def with_ballots(self, ballots: Iterable[Ballot]) -> "Election":
        return Election(self.candidates, tuple(ballots), self.axis)

    def format_ballot(self, ballot: Ballot) -> str:
        return " | ".join(" ".join(self.candidates[c] for c in sorted(g)) for g in ballot.groups)

    @classmethod
    def from_strings(cls, candidates, ballots: Sequence[str] = (), axis=None) -> "Election":
        """Build an election from human-readable ballots.

        ``candidates`` is a whitespace-separated string or a sequence of names.
        Each ballot lists groups separated by ``>`` (or ``|``); names inside a
        group are separated by whitespace or commas, braces are ignored::

            Election.from_strings("a b c d", ["{a,b} > {c,d}", "a > b > c > d"])
        """
        if isinstance(candidates, str):
            candidates = candidates.split()
        candidates = tuple(candidates)
        index = {name: i for i, name in enumerate(candidates)}
        parsed = []
        for text in ballots:
            groups = []
            for part in _split_groups(text):
                names = [t for t in re.split(r"[\s,{}]+", part) if t]
                try:
                    groups.append(frozenset(index[t] for t in names))
                except KeyError as exc:
                    raise InvalidElection(f"unknown candidate {exc.args[0]!r}") from None
            parsed.append(Ballot(tuple(groups)))
        if isinstance(axis, str):
            axis = axis.split()
        if axis is not None:
            axis = tuple(index[a] for a in axis)
        return cls(candidates, tuple(parsed), axis)

    @property
    def is_total(self) -> bool:
        return all(b.is_total for b in self.ballots)

    def is_kchotomous(self, k: int) -> bool:
        return all(b.is_kchotomous(k) for b in self.ballots)


@dataclass(frozen=True)
class MajorityTable:
    """``counts[a][b]`` is the number of voters strictly preferring a to b."""

    n: int
    counts: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.counts)

    def net(self, a: int, b: int) -> int:
        return self.counts[a][b] - self.counts[b][a]

    def beats(self, a: int, b: int) -> bool:
        """Strict majority relation ``a >_m b``."""
        return self.counts[a][b] > self.counts[b][a]

    def __add__(self, other: "MajorityTable") -> "MajorityTable":
        if self.m != other.m:
            raise ValueError("tables over different rosters")
        counts = tuple(
            tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.counts, other.counts)
        )
        return MajorityTable(self.n + other.n, counts)


def _ballot_counts(ballot: Ballot, counts: list[list[int]]) -> None:
    groups = ballot.groups
    for i, upper in enumerate(groups):
        for lower in groups[i + 1:]:
            for a in upper:
                row = counts[a]
                for b in lower:
                    row[b] += 1


def majority_table(election: Election) -> MajorityTable:
    m = election.m
    counts = [[0] * m for _ in range(m)]
    for ballot in election.ballots:
        _ballot_counts(ballot, counts)
    return MajorityTable(election.n, tuple(map(tuple, counts)))


def condorcet_winners(table: MajorityTable, weak: bool = False) -> frozenset[int]:
    """Candidates beating (``weak``: beating or tying) every other candidate."""
    winners = set()
    for p in range(table.m):
        row, ok = table.counts[p], True
        for a in range(table.m):
            if a == p:
                continue
            diff = row[a] - table.counts[a][p]
            if diff < 0 or (diff == 0 and not weak):
                ok = False
                break
        if ok:
            winners.add(p)
    return frozenset(winners)


def is_condorcet_winner(table: MajorityTable, p: int, weak: bool = False) -> bool:
    return all(
        (table.net(p, a) >= 0 if weak else table.net(p, a) > 0)
        for a in range(table.m) if a != p
    )


def net_preference(table: MajorityTable, a: int, b: int) -> int:
    if a == b:
        raise InvalidPair("net preference needs two distinct candidates")
    return table.net(a, b)


def restrict_voters(election: Election, voters: Iterable[int]) -> Election:
    """Sub-election on the given voters, kept in their original order."""
    chosen = sorted(set(voters))
    for v in chosen:
        if not 0 <= v < election.n:
            raise IndexError(f"voter index {v} out of range")
    return election.with_ballots(election.ballots[v] for v in chosen)


def restrict_candidates(election: Election, keep: Iterable[int]) -> Election:
    """Delete every candidate not in ``keep``; survivors are renumbered in roster order."""
    keep = frozenset(keep)
    if not keep:
        raise InvalidElection("cannot restrict to an empty candidate set")
    if not keep <= frozenset(range(election.m)):
        raise InvalidElection("unknown candidate id in restriction")
    survivors = sorted(keep)
    mapping = {c: i for i, c in enumerate(survivors)}
    ballots = tuple(b.restrict(keep).relabel(mapping) for b in election.ballots)
    axis = None
    if election.axis is not None:
        axis = tuple(mapping[c] for c in election.axis if c in keep)
    return Election(tuple(election.candidates[c] for c in survivors), ballots, axis)


# -- ballot edits -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class Move:
    """One unit edit: ``candidate`` moves one step ``up`` or ``down`` in ``voter``'s ballot.

    Under the swap model a step is an adjacent transposition; under the
    dichotomous model it moves the candidate between the two groups.
    """

    voter: int
    candidate: int
    direction: str


def apply_dichotomous_move(ballot: Ballot, candidate: int, direction: str) -> Ballot:
    """Move ``candidate`` between the approved and disapproved groups.

    A single-group ballot counts as "everything approved".  Emptying a group
    collapses the ballot to a single group.
    """
    if len(ballot.groups) > 2:
        raise InvalidMove("dichotomous move on a ballot with more than two groups")
    everyone = ballot.candidates
    if candidate not in everyone:
        raise InvalidMove(f"candidate {candidate} is not on the ballot")
    approved = ballot.groups[0]
    if direction == UP:
        if candidate in approved:
            raise InvalidMove(f"candidate {candidate} is already approved")
        approved = approved | {candidate}
    elif direction == DOWN:
        if candidate not in approved:
            raise InvalidMove(f"candidate {candidate} is already disapproved")
        approved = approved - {candidate}
    else:
        raise InvalidMove(f"unknown direction {direction!r}")
    if not approved or approved == everyone:
        return Ballot((everyone,))
    return Ballot((approved, everyone - approved))


def apply_adjacent_swap(ballot: Ballot, candidate: int, direction: str) -> Ballot:
    """Swap ``candidate`` with its neighbour above (``up``) or below (``down``)."""
    if not ballot.is_total:
        raise InvalidMove("adjacent swaps need a total-order ballot")
    order = list(ballot.order)
    i = order.index(candidate)
    j = i - 1 if direction == UP else i + 1
    if direction not in (UP, DOWN) or not 0 <= j < len(order):
        raise InvalidMove(f"cannot move candidate {candidate} {direction}")
    order[i], order[j] = order[j], order[i]
    return Ballot.from_order(order)


SWAP_MODEL = "swap"
DICHOTOMOUS_MODEL = "dichotomous"


def apply_moves(election: Election, moves: Iterable[Move], model: str) -> Election:
    step = apply_adjacent_swap if model == SWAP_MODEL else apply_dichotomous_move
    ballots = list(election.ballots)
    for mv in moves:
        if not 0 <= mv.voter < len(ballots):
            raise InvalidMove(f"voter {mv.voter} out of range")
        ballots[mv.voter] = step(ballots[mv.voter], mv.candidate, mv.direction)
    return election.with_ballots(ballots)


# -- consensus objectives ---------------------------------------------------

def _pair_score(table: MajorityTable, level: dict[int, int], objective: str) -> int:
    m = table.m
    counts = table.counts
    total = 0
    for a in range(m):
        la = level[a]
        for b in range(m):
            if a == b:
                continue
            above = la < level[b]
            if objective == SLATER:
                total += above == (counts[a][b] > counts[b][a])
            elif above:
                if objective == KEMENY_MIN:
                    total += counts[b][a]
                else:
                    total += counts[a][b] - counts[b][a]
    return total


def consensus_score(election: Election, order: Ballot, objective: str,
                    table: MajorityTable | None = None) -> int:
    """Score a consensus weak order against the electorate.

    ``kemeny-min``: sum over a ranked above b of N(b,a) (lower is better).
    ``net-max``: sum over a ranked above b of N(a,b) - N(b,a) (higher is better).
    ``slater``: number of ordered pairs (a, b) with (a above b) iff a >_m b.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if order.candidates != frozenset(range(election.m)):
        raise InvalidElection("consensus order must rank exactly the election's candidates")
    if table is None:
        table = majority_table(election)
    return _pair_score(table, order.level, objective)


# -- certificates -----------------------------------------------------------

VOTER_SUBSET = "voter-subset"
MOVE_SEQUENCE = "move-sequence"
CONSENSUS_ORDER = "consensus-order"
NO_CERTIFICATE = "none"


@dataclass(frozen=True)
class ScoreCertificate:
    """Witness for a reported score.

    ``payload`` is a tuple of voter indices, a tuple of :class:`Move`, a
    consensus :class:`Ballot`, or ``None``.  ``model`` names the edit model of
    a move sequence (``swap`` or ``dichotomous``).
    """

    kind: str
    payload: object = None
    model: str | None = None


def replay_certificate(election: Election, certificate: ScoreCertificate, rule: str,
                       p: int | None = None) -> int:
    """Recompute a score from its certificate, checking the witness is valid.

    ``rule`` is one of ``young``, ``strongyoung``, ``dodgson``, ``weakdodgson``
    or a consensus objective name.  Raises ``ValueError`` when the witness does
    not establish what it claims.
    """
    kind, payload = certificate.kind, certificate.payload
    if rule in ("young", "strongyoung"):
        if kind == NO_CERTIFICATE:
            if rule == "young":
                raise ValueError("young scores always have a voter-subset witness")
            return 0
        if kind != VOTER_SUBSET:
            raise ValueError(f"{rule} needs a voter-subset certificate")
        if len(set(payload)) != len(payload):
            raise ValueError("duplicate voter in certificate")
        sub = restrict_voters(election, payload)
        weak = rule == "young"
        if not weak and sub.n == 0:
            raise ValueError("an empty electorate has no Condorcet winner")
        if not is_condorcet_winner(majority_table(sub), p, weak=weak):
            raise ValueError("certificate subset does not make the candidate win")
        return sub.n
    if rule in ("dodgson", "weakdodgson"):
        if kind != MOVE_SEQUENCE:
            raise ValueError(f"{rule} needs a move-sequence certificate")
        edited = apply_moves(election, payload, certificate.model)
        if not is_condorcet_winner(majority_table(edited), p, weak=rule == "weakdodgson"):
            raise ValueError("moves do not make the candidate win")
        return len(payload)
    if rule in OBJECTIVES:
        if kind != CONSENSUS_ORDER:
            raise ValueError(f"{rule} needs a consensus-order certificate")
        if p is not None and p not in payload.groups[0]:
            raise ValueError("consensus order does not rank the candidate first")
        return consensus_score(election, payload, rule)
    raise ValueError(f"unknown rule {rule!r}")
