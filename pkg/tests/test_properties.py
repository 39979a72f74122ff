"""Property-based checks on randomly drawn elections."""
import itertools
import random
from math import comb

from hypothesis import given, settings, strategies as st

from electscore.ballots import (
    KEMENY_MIN, NET_MAX, SLATER, Ballot, Election, MajorityTable, condorcet_winners,
    consensus_score, majority_table, replay_certificate, restrict_candidates, restrict_voters,
)
from electscore.domains import check_single_crossing, check_single_peaked
from electscore.elx import parse_election, serialize_election
from electscore.fast import intransitive_triple, sp_young_score
from electscore.generate import (
    names, random_dichotomous, random_single_crossing, random_single_peaked, random_total,
)
from electscore.oracles import dodgson_score_exact, young_score_exact

SETTINGS = settings(max_examples=60, deadline=None)


@st.composite
def weak_ballots(draw, m):
    order = draw(st.permutations(range(m)))
    cuts = draw(st.lists(st.booleans(), min_size=max(m - 1, 0), max_size=max(m - 1, 0)))
    groups, cur = [], [order[0]]
    for c, cut in zip(order[1:], cuts):
        if cut:
            groups.append(frozenset(cur))
            cur = []
        cur.append(c)
    groups.append(frozenset(cur))
    return Ballot(tuple(groups))


@st.composite
def elections(draw, max_m=5, max_n=7):
    m = draw(st.integers(1, max_m))
    ballots = draw(st.lists(weak_ballots(m), max_size=max_n))
    return Election(names(m), tuple(ballots))


def seeded(gen, max_m, max_n, min_n=0):
    return st.builds(lambda seed, m, n: gen(random.Random(seed), m, n),
                     st.integers(0, 2**32), st.integers(1, max_m), st.integers(min_n, max_n))


@SETTINGS
@given(elections())
def test_pair_counts_bounded_by_n(e):
    t = majority_table(e)
    for a, b in itertools.permutations(range(e.m), 2):
        total = t.counts[a][b] + t.counts[b][a]
        tied = sum(bl.level[a] == bl.level[b] for bl in e.ballots)
        assert total == e.n - tied <= e.n
        assert t.net(a, b) == -t.net(b, a)


@SETTINGS
@given(elections(), st.data())
def test_table_of_subset_is_sum_of_ballot_tables(e, data):
    voters = data.draw(st.sets(st.integers(0, max(e.n - 1, 0)), max_size=e.n)) if e.n else set()
    sub = majority_table(restrict_voters(e, voters))
    total = MajorityTable(0, tuple(tuple(0 for _ in range(e.m)) for _ in range(e.m)))
    for v in sorted(voters):
        total = total + majority_table(e.with_ballots([e.ballots[v]]))
    assert sub == total


@SETTINGS
@given(seeded(random_total, 4, 5), st.data())
def test_net_max_is_affine_in_kemeny_min(e, data):
    order = Ballot.from_order(data.draw(st.permutations(range(e.m))))
    pairs = comb(e.m, 2)
    assert consensus_score(e, order, NET_MAX) == pairs * e.n - 2 * consensus_score(e, order, KEMENY_MIN)


@SETTINGS
@given(elections(), st.data())
def test_slater_range(e, data):
    order = Ballot.from_order(data.draw(st.permutations(range(e.m))))
    assert 0 <= consensus_score(e, order, SLATER) <= e.m * (e.m - 1)


@SETTINGS
@given(elections(max_m=4, max_n=6), st.data())
def test_young_certificates_replay(e, data):
    p = data.draw(st.integers(0, e.m - 1))
    for strong in (False, True):
        score, cert = young_score_exact(e, p, strong)
        assert replay_certificate(e, cert, "strongyoung" if strong else "young", p) == score


@SETTINGS
@given(seeded(random_total, 4, 4, min_n=1), st.data())
def test_dodgson_certificates_replay(e, data):
    p = data.draw(st.integers(0, e.m - 1))
    for weak in (False, True):
        score, cert = dodgson_score_exact(e, p, weak)
        assert replay_certificate(e, cert, "weakdodgson" if weak else "dodgson", p) == score


@SETTINGS
@given(seeded(random_single_peaked, 5, 6), st.data())
def test_single_peaked_restriction_closure(e, data):
    assert check_single_peaked(e)
    keep = data.draw(st.sets(st.integers(0, e.m - 1), min_size=1))
    assert check_single_peaked(restrict_candidates(e, keep))
    voters = data.draw(st.sets(st.integers(0, max(e.n - 1, 0)), max_size=e.n)) if e.n else set()
    assert check_single_peaked(restrict_voters(e, voters))


@SETTINGS
@given(seeded(random_single_crossing, 5, 6), st.data())
def test_single_crossing_restriction_closure(e, data):
    assert check_single_crossing(e)
    voters = data.draw(st.sets(st.integers(0, max(e.n - 1, 0)), max_size=e.n)) if e.n else set()
    assert check_single_crossing(restrict_voters(e, voters))


@SETTINGS
@given(seeded(random_dichotomous, 6, 9))
def test_dichotomous_weak_condorcet_winner_exists(e):
    assert condorcet_winners(majority_table(e), weak=True)


@SETTINGS
@given(st.one_of(seeded(random_single_peaked, 5, 8), seeded(random_single_crossing, 5, 8)))
def test_restricted_domains_have_transitive_majority(e):
    assert intransitive_triple(majority_table(e)) is None


@SETTINGS
@given(seeded(random_single_peaked, 4, 10), st.data())
def test_single_peaked_young_matches_oracle(e, data):
    p = data.draw(st.integers(0, e.m - 1))
    for strong in (False, True):
        assert sp_young_score(e, p, strong)[0] == young_score_exact(e, p, strong)[0]


@SETTINGS
@given(elections(max_n=10))
def test_elx_round_trip(e):
    text = serialize_election(e)
    assert parse_election(text) == e
    assert serialize_election(parse_election(text.encode())) == text
