"""Polynomial-time score and winner algorithms for restricted electorates.

Dichotomous electorates: weak Condorcet winners are Young winners, Dodgson
scores have a closed form, (2,2)-Kemeny is a threshold rule on approval
counts and (2,k)-Slater only needs one order per composition of ``m``.
Single-peaked electorates: Dodgson never has to waste a swap, so the score is
the total excess of ``N(c, p)`` over the winning threshold; Young deletes the
voters that Dodgson would have edited.  Single-crossing electorates: the
median voter(s) decide everything.  Kemeny/Slater scores on any of these
domains reduce to repeated winner queries.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .ballots import (
    CONSENSUS_ORDER, DICHOTOMOUS_MODEL, DOWN, KEMENY_MIN, MOVE_SEQUENCE, NET_MAX,
    OBJECTIVES, SLATER, SWAP_MODEL, UP, VOTER_SUBSET, Ballot, Election, MajorityTable,
    Move, ScoreCertificate, apply_moves, condorcet_winners, consensus_score,
    majority_table, restrict_candidates,
)
from .domains import (
    median_voters, require_dichotomous, require_single_crossing, require_single_peaked,
)
from .errors import DomainViolation, InvalidElection


def threshold(n: int, weak: bool) -> int:
    """Most voters that may prefer a rival to ``p`` while ``p`` still wins.

    Strict winners need ``N(c, p) < n/2``, weak winners ``N(c, p) <= n/2``.
    """
    return n // 2 if weak else (n + 1) // 2 - 1


@dataclass(frozen=True)
class SwapPlan:
    """Edits that make ``candidate`` win.

    ``lifts`` holds ``(voter, steps)`` pairs for total orders (the candidate is
    swapped up ``steps`` times); ``moves`` holds dichotomous moves.
    """

    candidate: int
    model: str
    lifts: tuple[tuple[int, int], ...] = ()
    moves: tuple[Move, ...] = ()

    @property
    def cost(self) -> int:
        return sum(k for _, k in self.lifts) + len(self.moves)

    def to_moves(self) -> tuple[Move, ...]:
        lifted = tuple(Move(v, self.candidate, UP) for v, k in self.lifts for _ in range(k))
        return lifted + self.moves

    def apply(self, election: Election) -> Election:
        return apply_moves(election, self.to_moves(), self.model)

    def certificate(self) -> ScoreCertificate:
        return ScoreCertificate(MOVE_SEQUENCE, self.to_moves(), self.model)


def _approvals(election: Election) -> list[int]:
    app = [0] * election.m
    for ballot in election.ballots:
        for c in ballot.groups[0]:
            app[c] += 1
    return app


# -- dichotomous --------------------------------------------------------------

def young_winners_dichotomous(election: Election) -> frozenset[int]:
    """Young winners of a dichotomous electorate: exactly its weak Condorcet winners."""
    require_dichotomous(election)
    return condorcet_winners(majority_table(election), weak=True)


def dodgson_score_dichotomous(election: Election, p: int, weak: bool = False):
    require_dichotomous(election)
    if election.n == 0:
        raise InvalidElection("Dodgson score is undefined without voters")
    table = majority_table(election)
    rivals = [a for a in range(election.m) if a != p]
    if not rivals:
        return 0, SwapPlan(p, DICHOTOMOUS_MODEL)
    worst = max(table.net(a, p) for a in rivals)
    below = [v for v, b in enumerate(election.ballots) if p not in b.groups[0]]

    def lift(voters):
        return tuple(Move(v, p, UP) for v in voters)

    if weak:
        need = max(0, worst)
        plan = SwapPlan(p, DICHOTOMOUS_MODEL, moves=lift(below[:need]))
        return plan.cost, plan
    if worst < 0:
        return 0, SwapPlan(p, DICHOTOMOUS_MODEL)
    if len(below) >= worst + 1:
        plan = SwapPlan(p, DICHOTOMOUS_MODEL, moves=lift(below[:worst + 1]))
        return plan.cost, plan
    # p ends up approved everywhere; rivals still level with p are approved
    # everywhere too and each needs one down-move
    lifted = len(below)
    tied = [a for a in rivals if table.net(a, p) - lifted == 0]
    downs = tuple(Move(0, a, DOWN) for a in tied)
    plan = SwapPlan(p, DICHOTOMOUS_MODEL, moves=lift(below) + downs)
    return plan.cost, plan


def _split_score(m: int, total: int, app: list[int], top) -> int:
    # sum over a in top, b outside of app[a] - app[b]
    return m * sum(app[c] for c in top) - len(top) * total


def mean_rule(election: Election):
    """(2,2)-Kemeny: best approved/disapproved split of the candidates.

    Returns ``(consensus, winners)`` where winners are all candidates that sit
    in the top group of some optimal split.
    """
    require_dichotomous(election)
    m = election.m
    app = _approvals(election)
    total = sum(app)
    ranked = sorted(range(m), key=lambda c: (-app[c], c))
    scores = [_split_score(m, total, app, ranked[:j]) for j in range(m + 1)]
    best = max(scores)
    winners: set[int] = set()
    consensus = None
    for j, s in enumerate(scores):
        if s != best:
            continue
        if consensus is None:
            consensus = Ballot.dichotomous(ranked[:j], m)
        if j in (0, m):
            winners.update(range(m))
        else:
            cut = app[ranked[j - 1]]
            winners.update(c for c in range(m) if app[c] >= cut)
    return consensus, frozenset(winners)


def k22_kemeny_score(election: Election, p: int):
    """(2,2)-Kemeny score of ``p``: best split with ``p`` approved."""
    require_dichotomous(election)
    m = election.m
    app = _approvals(election)
    total = sum(app)
    rest = sorted((c for c in range(m) if c != p), key=lambda c: (-app[c], c))
    best = best_top = None
    for j in range(m):
        top = [p] + rest[:j]
        s = _split_score(m, total, app, top)
        if best is None or s > best:
            best, best_top = s, top
    return best, ScoreCertificate(CONSENSUS_ORDER, Ballot.dichotomous(best_top, m))


# -- transitive majority relations -------------------------------------------

def intransitive_triple(table: MajorityTable):
    """Return ``(a, b, c)`` with a >_m b >_m c but not a >_m c, or None."""
    m = table.m
    for a in range(m):
        for b in range(m):
            if a == b or not table.beats(a, b):
                continue
            for c in range(m):
                if c != a and table.beats(b, c) and not table.beats(a, c):
                    return a, b, c
    return None


WINNER_RULES = ("kemeny-2m", "kemeny-total", "slater-total")


def transitive_majority_winners(election: Election, rule: str = "kemeny-total") -> frozenset[int]:
    """Candidates beaten by nobody under a transitive strict majority relation.

    When ``>_m`` is transitive every linear extension of it is an optimal
    Kemeny, (2,m)-Kemeny and Slater consensus, so the winners of all three
    rules are its maximal elements.
    """
    if rule not in WINNER_RULES:
        raise ValueError(f"unknown rule {rule!r}")
    table = majority_table(election)
    bad = intransitive_triple(table)
    if bad is not None:
        names = " > ".join(election.candidates[c] for c in bad)
        raise DomainViolation(f"majority relation is intransitive ({names}, not first > last)")
    m = election.m
    return frozenset(p for p in range(m) if not any(table.beats(a, p) for a in range(m)))


def score_via_winner_reduction(election: Election, p: int, objective: str = KEMENY_MIN):
    """Consensus score of ``p`` from repeated winner queries.

    ``p`` goes first; the remaining candidates are ordered by repeatedly
    deleting everything already placed and appending the smallest-id winner of
    what is left.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    rule = "slater-total" if objective == SLATER else "kemeny-total"
    order = [p]
    alive = [c for c in range(election.m) if c != p]
    while alive:
        sub = restrict_candidates(election, alive)
        winners = transitive_majority_winners(sub, rule)
        nxt = alive[min(winners)]
        order.append(nxt)
        alive.remove(nxt)
    consensus = Ballot.from_order(order)
    return consensus_score(election, consensus, objective), ScoreCertificate(CONSENSUS_ORDER, consensus)


def _compositions(m: int, k: int):
    for parts in range(1, min(k, m) + 1):
        for cuts in combinations(range(1, m), parts - 1):
            bounds = (0,) + cuts + (m,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def k2k_slater_score(election: Election, p: int, k: int):
    """(2,k)-Slater score of ``p`` by scanning compositions of ``m`` into <= k parts.

    For each composition ``p`` heads the first group and the other candidates
    fill the groups in majority order (approval count, then id).
    """
    require_dichotomous(election)
    if k < 1:
        raise ValueError("k must be positive")
    table = majority_table(election)
    if intransitive_triple(table) is not None:
        raise DomainViolation("majority relation is intransitive")
    app = _approvals(election)
    fill = [p] + sorted((c for c in range(election.m) if c != p), key=lambda c: (-app[c], c))
    best = best_order = None
    for sizes in _compositions(election.m, k):
        groups, start = [], 0
        for size in sizes:
            groups.append(frozenset(fill[start:start + size]))
            start += size
        order = Ballot(tuple(groups))
        s = consensus_score(election, order, SLATER, table=table)
        if best is None or s > best:
            best, best_order = s, order
    return best, ScoreCertificate(CONSENSUS_ORDER, best_order)


# -- single-peaked ------------------------------------------------------------

def _sides(axis, p):
    """Candidates left and right of ``p`` on the axis, farthest first."""
    pos = axis.index(p)
    return [list(axis[:pos]), list(axis[pos + 1:][::-1])]


def _forms(election: Election, p: int, side: list[int]) -> list[int | None]:
    """Per voter, the smallest side index ranked above ``p`` (None if none).

    In a single-peaked ballot the side candidates above ``p`` are exactly
    ``side[i:]`` for that index ``i``.
    """
    forms = []
    for ballot in election.ballots:
        lp = ballot.level[p]
        form = None
        for i, c in enumerate(side):
            if ballot.level[c] < lp:
                form = i
                break
        forms.append(form)
    return forms


def pairwise_excess(election: Election, p: int, weak: bool = False) -> int:
    """``sum_c max(0, N(c,p) - H)``: a lower bound on the swap Dodgson score.

    Exact on single-peaked electorates; elsewhere swaps can be wasted.
    """
    h = threshold(election.n, weak)
    table = majority_table(election)
    return sum(max(0, table.counts[c][p] - h) for c in range(election.m) if c != p)


def sp_dodgson_score(election: Election, p: int, weak: bool = False, axis=None):
    """Dodgson score of ``p`` in a single-peaked electorate.

    Returns ``(score, SwapPlan)`` with score ``sum_c max(0, N(c,p) - H)``.  On
    each side of ``p`` the plan lifts ``p`` to the top in just enough voters
    of the first overloaded form and in every voter of the later forms.
    """
    axis = require_single_peaked(election, axis)
    n = election.n
    if n == 0:
        raise InvalidElection("Dodgson score is undefined without voters")
    h = threshold(n, weak)
    score = pairwise_excess(election, p, weak)

    lifts = []
    for side in _sides(axis, p):
        forms = _forms(election, p, side)
        against = 0
        for i in range(len(side)):
            against += sum(f == i for f in forms)  # N(side[i], p)
            if against > h:
                first = [v for v, f in enumerate(forms) if f == i][:against - h]
                later = [v for v, f in enumerate(forms) if f is not None and f > i]
                lifts.extend(first + later)
                break
    lifts.sort()
    plan = SwapPlan(p, SWAP_MODEL,
                    lifts=tuple((v, election.ballots[v].level[p]) for v in lifts))
    assert plan.cost == score, (plan.cost, score)
    return score, plan


def sp_young_score(election: Election, p: int, strong: bool = False, axis=None):
    """(strong)Young score of ``p`` in a single-peaked electorate.

    Deleting ``t`` voters lowers the threshold to ``H(n - t)``; on each side the
    cheapest repair deletes the voters ranking the most side candidates above
    ``p``, so ``t`` is feasible iff the two per-side deficits fit into ``t``.
    """
    axis = require_single_peaked(election, axis)
    n = election.n
    per_side = []
    for side in _sides(axis, p):
        forms = _forms(election, p, side)
        ranked = sorted((f, v) for v, f in enumerate(forms) if f is not None)
        per_side.append([v for _, v in ranked])  # voters counted against the nearest rival
    for t in range(n + 1):
        r = n - t
        if strong and r == 0:
            continue
        h = threshold(r, weak=not strong)
        cuts = [max(0, len(against) - h) for against in per_side]
        if sum(cuts) > t:
            continue
        deleted = set()
        for against, cut in zip(per_side, cuts):
            deleted.update(against[:cut])
        extra = t - len(deleted)
        for v in reversed(range(n)):
            if extra == 0:
                break
            if v not in deleted:
                deleted.add(v)
                extra -= 1
        kept = tuple(v for v in range(n) if v not in deleted)
        return r, ScoreCertificate(VOTER_SUBSET, kept)
    return 0, ScoreCertificate("none")


# -- single-crossing ----------------------------------------------------------

def _above(ballot: Ballot, p: int) -> frozenset[int]:
    order = ballot.order
    return frozenset(order[:order.index(p)])


def _sc_young(election: Election, p: int, strong: bool):
    require_single_crossing(election)
    n = election.n
    above = [_above(b, p) for b in election.ballots]
    best, best_set = 0, ()
    for i in range(n):
        if above[i]:
            continue
        k = min(i, n - 1 - i)
        if 2 * k + 1 > best:
            best, best_set = 2 * k + 1, tuple(range(i - k, i + k + 1))
    for i in range(n):
        for j in range(i + 1, n):
            if strong:
                if above[i] or above[j]:
                    continue
            elif above[i] & above[j]:
                continue
            k = min(i, n - 1 - j)
            if 2 * k + 2 > best:
                best = 2 * k + 2
                best_set = tuple(range(i - k, i + 1)) + tuple(range(j, j + k + 1))
    if strong and best == 0:
        return 0, ScoreCertificate("none")
    return best, ScoreCertificate(VOTER_SUBSET, best_set)


def sc_young_score(election: Election, p: int):
    """Young score of ``p`` for a single-crossing voter order.

    A kept subset makes ``p`` a weak Condorcet winner iff its median voter
    ranks ``p`` first (odd size) or its two medians never both put the same
    rival above ``p`` (even size); the best subset keeps as many voters as
    possible symmetrically around such medians.
    """
    return _sc_young(election, p, strong=False)


def sc_strongyoung_score(election: Election, p: int):
    """strongYoung score: odd subsets as for Young, even ones need both medians to rank ``p`` first."""
    return _sc_young(election, p, strong=True)


def sc_dodgson_winners(election: Election):
    """Dodgson winners of a single-crossing electorate and their scores.

    Only weak Condorcet winners can win; such a candidate needs exactly one
    swap per rival it ties with (lift it to the top of both median ballots).
    Returns ``(winners, scores)`` with ``scores`` keyed by weak Condorcet winner.
    """
    require_single_crossing(election)
    n = election.n
    if n == 0:
        raise InvalidElection("Dodgson winners are undefined without voters")
    medians = [election.ballots[v] for v in median_voters(n)]
    if len(medians) == 1:
        top = medians[0].order[0]
        return frozenset((top,)), {top: 0}
    scores = {}
    for p in range(election.m):
        ties = 0
        for a in range(election.m):
            if a == p:
                continue
            against = sum(b.prefers(a, p) for b in medians)
            if against == 2:
                break
            ties += against
        else:
            scores[p] = ties
    low = min(scores.values())
    return frozenset(p for p, s in scores.items() if s == low), scores
