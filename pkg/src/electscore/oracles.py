"""Exhaustive ground-truth solvers.

These are deliberately naive: they enumerate voter subsets, lift vectors,
move sequences or consensus orders directly from the score definitions and
never rely on any structural theorem about restricted domains.  Every solver
returns ``(score, ScoreCertificate)`` and refuses, with
:class:`~electscore.errors.BudgetExceeded`, inputs larger than its budget.
Among optimal witnesses the lexicographically smallest one is returned.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .ballots import (
    CONSENSUS_ORDER, DICHOTOMOUS_MODEL, KEMENY_MIN, MOVE_SEQUENCE, NET_MAX,
    NO_CERTIFICATE, OBJECTIVES, SLATER, SWAP_MODEL, UP, DOWN, VOTER_SUBSET,
    Ballot, Election, Move, ScoreCertificate, majority_table, _pair_score,
)
from .errors import BudgetExceeded, InvalidElection, UnsupportedBallotKind


@dataclass(frozen=True)
class OracleBudget:
    max_voters: int = 18
    max_candidates: int = 7
    max_states: int = 5_000_000

    def __post_init__(self):
        if min(self.max_voters, self.max_candidates, self.max_states) < 1:
            raise ValueError("oracle budgets must be positive")


DEFAULT_BUDGET = OracleBudget()


# -- Young ------------------------------------------------------------------

def young_score_exact(election: Election, p: int, strong: bool = False,
                      budget: OracleBudget = DEFAULT_BUDGET):
    """Largest voter subset making ``p`` a weak (``strong``: strict) Condorcet winner.

    All ``2**n`` subsets are scored at once: each voter contributes +1/0/-1
    against every rival depending on whether it ranks ``p`` above, level with
    or below that rival.  The empty subset is admissible for Young (score 0);
    strongYoung reports 0 with no certificate when nothing works.
    """
    n = election.n
    if n > budget.max_voters:
        raise BudgetExceeded(f"{n} voters exceed the subset budget of {budget.max_voters}")
    rivals = [a for a in range(election.m) if a != p]
    contrib = np.zeros((n, len(rivals)), dtype=np.int32)
    for v, ballot in enumerate(election.ballots):
        lv = ballot.level
        lp = lv[p]
        for j, a in enumerate(rivals):
            contrib[v, j] = (lp < lv[a]) - (lv[a] < lp)

    masks = np.arange(1 << n, dtype=np.int64)
    # voter v <-> bit n-1-v, so among equal sizes the largest mask is the
    # lexicographically smallest voter tuple
    shifts = (n - 1 - np.arange(n)).astype(np.int64)
    bits = ((masks[:, None] >> shifts) & 1).astype(np.int32)
    sums = bits @ contrib
    ok = (sums > 0).all(axis=1) if strong else (sums >= 0).all(axis=1)
    if strong:
        ok[0] = False
    if not ok.any():
        return 0, ScoreCertificate(NO_CERTIFICATE)
    sizes = bits.sum(axis=1).astype(np.int64)
    key = np.where(ok, (sizes << n) | masks, -1)
    mask = int(masks[int(key.argmax())])
    voters = tuple(v for v in range(n) if mask >> (n - 1 - v) & 1)
    return len(voters), ScoreCertificate(VOTER_SUBSET, voters)


# -- Dodgson ----------------------------------------------------------------

def _threshold(n: int, weak: bool) -> int:
    """Most voters that may prefer a rival to p in a total-order electorate."""
    return n // 2 if weak else (n + 1) // 2 - 1


def _resolve_model(election: Election, model: str | None) -> str:
    if model is None:
        if election.is_total:
            return SWAP_MODEL
        if election.is_kchotomous(2):
            return DICHOTOMOUS_MODEL
        raise UnsupportedBallotKind("Dodgson needs all total orders or all dichotomous ballots")
    if model == SWAP_MODEL and not election.is_total:
        raise UnsupportedBallotKind("swap model needs total-order ballots")
    if model == DICHOTOMOUS_MODEL and not election.is_kchotomous(2):
        raise UnsupportedBallotKind("dichotomous model needs ballots with at most two groups")
    if model not in (SWAP_MODEL, DICHOTOMOUS_MODEL):
        raise ValueError(f"unknown edit model {model!r}")
    return model


def dodgson_score_exact(election: Election, p: int, weak: bool = False,
                        model: str | None = None, budget: OracleBudget = DEFAULT_BUDGET):
    """Fewest unit edits making ``p`` a (weak) Condorcet winner.

    ``model`` is ``"swap"`` (adjacent transpositions, total orders) or
    ``"dichotomous"`` (moves between the two groups); by default it is
    inferred, preferring ``swap`` when every ballot is a total order.
    Total orders are solved by enumerating how far ``p`` is lifted in each
    ballot; dichotomous profiles by a best-first search over move sequences.
    """
    if election.n == 0:
        raise InvalidElection("Dodgson score is undefined without voters")
    model = _resolve_model(election, model)
    if model == SWAP_MODEL:
        return _dodgson_lifts(election, p, weak, budget)
    return dodgson_score_search(election, p, weak, model, budget)


def _dodgson_lifts(election, p, weak, budget):
    n = election.n
    threshold = _threshold(n, weak)
    rivals = [a for a in range(election.m) if a != p]
    against = {a: sum(b.prefers(a, p) for b in election.ballots) for a in rivals}
    tracked = [a for a in rivals if against[a] > threshold]
    dim = {a: i for i, a in enumerate(tracked)}
    need = tuple(against[a] - threshold for a in tracked)

    # layer-by-layer DP over voters; a state is the capped gain per tracked rival
    frontier = {tuple(0 for _ in tracked): 0}
    back = []
    for ballot in election.ballots:
        order = ballot.order
        pos = order.index(p)
        above = order[:pos][::-1]
        nxt: dict[tuple, int] = {}
        choice: dict[tuple, tuple] = {}
        for state, cost in frontier.items():
            gains = list(state)
            for k in range(pos + 1):
                if k:
                    a = above[k - 1]
                    if a in dim and gains[dim[a]] < need[dim[a]]:
                        gains[dim[a]] += 1
                key = tuple(gains)
                c = cost + k
                if key not in nxt or c < nxt[key]:
                    nxt[key] = c
                    choice[key] = (state, k)
        if len(nxt) > budget.max_states:
            raise BudgetExceeded("lift DP exceeds the state budget")
        back.append(choice)
        frontier = nxt
    score = frontier[need]
    lifts = []
    state = need
    for choice in reversed(back):
        state, k = choice[state]
        lifts.append(k)
    lifts.reverse()
    moves = tuple(Move(v, p, UP) for v, k in enumerate(lifts) for _ in range(k))
    assert len(moves) == score
    return score, ScoreCertificate(MOVE_SEQUENCE, moves, SWAP_MODEL)


class _DichotomousSpace:
    """Profiles as approved-set bitmasks; a full mask is the single-group ballot."""

    def __init__(self, election, p, weak):
        self.m, self.p = election.m, p
        self.full = (1 << self.m) - 1
        self.rivals = [a for a in range(self.m) if a != p]
        self.slack = 0 if weak else -1
        self.start = tuple(sum(1 << c for c in b.groups[0]) if len(b.groups) == 2 else self.full
                           for b in election.ballots)

    def contrib(self, mask):
        pin = mask >> self.p & 1
        return tuple((mask >> a & 1) - pin for a in self.rivals)

    def neighbours(self, mask):
        for c in range(self.m):
            bit = 1 << c
            if mask & bit:
                new = mask & ~bit
                yield c, DOWN, new if new else self.full
            else:
                yield c, UP, mask | bit

    def deficits(self, totals):
        return [max(0, t - self.slack) for t in totals]

    def heuristic(self, totals):
        # one move changes each pairwise margin by at most one
        return max(self.deficits(totals), default=0)


class _SwapSpace:
    """Profiles as tuples of candidate orders; moves are adjacent transpositions."""

    def __init__(self, election, p, weak):
        self.p = p
        self.rivals = [a for a in range(election.m) if a != p]
        self.threshold = _threshold(election.n, weak)
        self.start = tuple(b.order for b in election.ballots)

    def contrib(self, order):
        pos = order.index(self.p)
        above = set(order[:pos])
        return tuple(int(a in above) for a in self.rivals)

    def neighbours(self, order):
        for i in range(1, len(order)):
            new = list(order)
            new[i - 1], new[i] = new[i], new[i - 1]
            yield order[i], UP, tuple(new)

    def heuristic(self, totals):
        # one swap changes one N(a, p) by one
        return sum(max(0, t - self.threshold) for t in totals)


def dodgson_score_search(election: Election, p: int, weak: bool = False,
                         model: str | None = None, budget: OracleBudget = DEFAULT_BUDGET):
    """Best-first search over whole profiles, permitting every unit edit.

    Uses an admissible lower bound on the remaining edits, so the first goal
    popped is optimal.  Profiles equal up to voter order are merged.
    """
    if election.n == 0:
        raise InvalidElection("Dodgson score is undefined without voters")
    model = _resolve_model(election, model)
    space = (_SwapSpace if model == SWAP_MODEL else _DichotomousSpace)(election, p, weak)

    start = space.start
    contribs = [space.contrib(b) for b in start]
    totals = tuple(map(sum, zip(*contribs))) if contribs else ()
    totals = totals or tuple(0 for _ in space.rivals)
    start_key = tuple(sorted(start))
    nodes = {start_key: (0, start, totals, None, None)}
    closed = set()
    counter = 0
    heap = [(space.heuristic(totals), 0, counter, start_key)]
    while heap:
        f, neg_g, _, key = heapq.heappop(heap)
        if key in closed:
            continue
        closed.add(key)
        g, profile, totals, parent, move = nodes[key]
        if space.heuristic(totals) == 0:
            moves = []
            while parent is not None:
                moves.append(move)
                _, _, _, parent, move = nodes[parent]
            moves.reverse()
            return g, ScoreCertificate(MOVE_SEQUENCE, tuple(moves), model)
        if len(closed) > budget.max_states:
            raise BudgetExceeded("move search exceeds the state budget")
        for v, ballot in enumerate(profile):
            if ballot in profile[:v]:
                continue  # identical ballots give identical successors
            old = space.contrib(ballot)
            for cand, direction, new_ballot in space.neighbours(ballot):
                if new_ballot == ballot:
                    continue
                new = space.contrib(new_ballot)
                new_totals = tuple(t - o + w for t, o, w in zip(totals, old, new))
                new_profile = profile[:v] + (new_ballot,) + profile[v + 1:]
                new_key = tuple(sorted(new_profile))
                if new_key in closed:
                    continue
                known = nodes.get(new_key)
                if known is not None and known[0] <= g + 1:
                    continue
                nodes[new_key] = (g + 1, new_profile, new_totals, key, Move(v, cand, direction))
                counter += 1
                heapq.heappush(heap, (g + 1 + space.heuristic(new_totals), -(g + 1), counter, new_key))
    raise AssertionError("search space exhausted without reaching a goal")


# -- consensus orders -------------------------------------------------------

def weak_orders(candidates, max_groups: int, first=None):
    """Yield every weak order of ``candidates`` with at most ``max_groups`` groups.

    If ``first`` is given it is always placed in the top group.
    """
    candidates = tuple(sorted(candidates))
    if not candidates:
        yield ()
        return
    if max_groups < 1:
        return
    pool = candidates
    for size in range(1, len(pool) + 1):
        for top in combinations(pool, size):
            if first is not None and first not in top:
                continue
            rest = tuple(c for c in pool if c not in top)
            if rest and max_groups == 1:
                continue
            for tail in weak_orders(rest, max_groups - 1):
                yield (frozenset(top),) + tail


def _better(objective):
    if objective == KEMENY_MIN:
        return lambda new, best: new < best
    return lambda new, best: new > best


def _check_m(election, budget):
    if election.m > budget.max_candidates:
        raise BudgetExceeded(f"{election.m} candidates exceed the order budget of {budget.max_candidates}")


def kemeny_score_exact(election: Election, p: int | None = None, objective: str = KEMENY_MIN,
                       budget: OracleBudget = DEFAULT_BUDGET):
    """Optimal total-order consensus, optionally with ``p`` ranked first."""
    if objective not in (KEMENY_MIN, NET_MAX):
        raise ValueError(f"kemeny objective must be kemeny-min or net-max, not {objective!r}")
    return _best_total_order(election, p, objective, budget)


def _best_total_order(election, p, objective, budget):
    _check_m(election, budget)
    table = majority_table(election)
    m = election.m
    counts = table.counts
    if objective == KEMENY_MIN:
        weight = [[counts[b][a] for b in range(m)] for a in range(m)]
    elif objective == NET_MAX:
        weight = [[counts[a][b] - counts[b][a] for b in range(m)] for a in range(m)]
    else:
        # slater on a total order: each unordered pair scores 2 if agreeing
        # with a strict majority, 1 if the majority ties, 0 otherwise
        weight = [[1 + (counts[a][b] > counts[b][a]) - (counts[b][a] > counts[a][b])
                   for b in range(m)] for a in range(m)]
    better = _better(objective)
    rest = [c for c in range(m) if c != p]
    best = best_order = None
    for perm in permutations(rest):
        order = perm if p is None else (p,) + perm
        score = 0
        for i in range(m):
            row = weight[order[i]]
            for j in range(i + 1, m):
                score += row[order[j]]
        if best is None or better(score, best):
            best, best_order = score, order
    return best, ScoreCertificate(CONSENSUS_ORDER, Ballot.from_order(best_order))


def _best_weak_order(election, k, objective, p, budget):
    _check_m(election, budget)
    if k < 1:
        raise ValueError("k must be positive")
    table = majority_table(election)
    better = _better(objective)
    best = best_groups = None
    for groups in weak_orders(range(election.m), k, first=p):
        level = {c: i for i, g in enumerate(groups) for c in g}
        score = _pair_score(table, level, objective)
        if best is None or better(score, best):
            best, best_groups = score, groups
    return best, ScoreCertificate(CONSENSUS_ORDER, Ballot(best_groups))


def dichotomous_consensus_exact(election: Election, k: int, objective: str = NET_MAX,
                                p: int | None = None, budget: OracleBudget = DEFAULT_BUDGET):
    """Optimal consensus among weak orders with at most ``k`` groups (``p`` in the top group)."""
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    return _best_weak_order(election, k, objective, p, budget)


def slater_score_exact(election: Election, p: int | None = None, k: int | None = None,
                       budget: OracleBudget = DEFAULT_BUDGET):
    """Maximum Slater agreement over total orders (``k=None``) or ``k``-chotomous orders."""
    if k is None:
        return _best_total_order(election, p, SLATER, budget)
    return _best_weak_order(election, k, SLATER, p, budget)
