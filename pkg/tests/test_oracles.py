import random

import pytest

from electscore.ballots import (
    KEMENY_MIN, NET_MAX, SLATER, Ballot, Election, is_condorcet_winner, majority_table,
    replay_certificate, restrict_voters,
)
from electscore.errors import BudgetExceeded, InvalidElection
from electscore.forge import Graph, forge
from electscore.generate import random_dichotomous, random_total
from electscore.oracles import (
    OracleBudget, dichotomous_consensus_exact, dodgson_score_exact, dodgson_score_search,
    kemeny_score_exact, slater_score_exact, weak_orders, young_score_exact,
)

E = Election.from_strings
APPROVALS = ["a b | c", "a | b c", "a c | b"]


class TestYoung:
    def test_keep_everyone(self):
        e = E("p a", ["p>a"] * 3 + ["a>p"] * 2)
        score, cert = young_score_exact(e, 0)
        assert score == 5 and cert.payload == (0, 1, 2, 3, 4)

    def test_hopeless_candidate(self):
        e = E("a p", ["a>p"])
        assert young_score_exact(e, 1)[0] == 0
        score, cert = young_score_exact(e, 1, strong=True)
        assert score == 0 and cert.kind == "none"

    def test_triangle_forge(self):
        inst = forge("youngscore", Graph(3, frozenset({(0, 1), (1, 2), (0, 2)})))
        assert young_score_exact(inst.election, inst.election.index("p"))[0] == 2

    def test_budget(self):
        e = E("a b", ["a>b"] * 5)
        with pytest.raises(BudgetExceeded):
            young_score_exact(e, 0, budget=OracleBudget(max_voters=4))

    def test_certificates_are_maximal(self):
        rng = random.Random(5)
        for _ in range(60):
            e = random_total(rng, rng.randint(2, 4), rng.randint(1, 7))
            for p in range(e.m):
                for strong in (False, True):
                    score, cert = young_score_exact(e, p, strong)
                    if cert.kind == "none":
                        continue
                    kept = set(cert.payload)
                    for v in set(range(e.n)) - kept:
                        sub = restrict_voters(e, kept | {v})
                        assert not is_condorcet_winner(majority_table(sub), p, weak=not strong)


class TestDodgson:
    def test_four_voter_example(self):
        e = E("a b c p", ["a>b>p>c"] * 2 + ["a>c>p>b"] * 2)
        assert dodgson_score_exact(e, 3)[0] == 6
        assert dodgson_score_search(e, 3)[0] == 6

    def test_dichotomous_single_ballot(self):
        e = E("a b c d", ["{a,b} > {c,d}"])
        assert dodgson_score_exact(e, 2)[0] == 3
        assert dodgson_score_exact(e, 2, weak=True)[0] == 1

    def test_already_winning(self):
        e = E("p a b", ["p>a>b"])
        assert dodgson_score_exact(e, 0)[0] == dodgson_score_exact(e, 0, weak=True)[0] == 0

    def test_no_voters(self):
        with pytest.raises(InvalidElection):
            dodgson_score_exact(Election(("a", "b")), 0)

    def test_two_strategies_agree(self):
        rng = random.Random(11)
        for _ in range(150):
            e = random_total(rng, rng.randint(1, 4), rng.randint(1, 3))
            for p in range(e.m):
                for weak in (False, True):
                    assert dodgson_score_exact(e, p, weak)[0] == dodgson_score_search(e, p, weak)[0]

    def test_certificates_replay(self):
        rng = random.Random(12)
        for _ in range(80):
            e = random_dichotomous(rng, rng.randint(2, 4), rng.randint(1, 5))
            for p in range(e.m):
                for weak in (False, True):
                    score, cert = dodgson_score_exact(e, p, weak, model="dichotomous")
                    rule = "weakdodgson" if weak else "dodgson"
                    assert replay_certificate(e, cert, rule, p) == score


class TestKemeny:
    def test_consensus_and_candidate_score(self):
        e = E("a b c", ["a>b>c", "b>a>c", "b>c>a"])
        score, cert = kemeny_score_exact(e)
        assert score == 2 and cert.payload.order == (1, 0, 2)
        score, cert = kemeny_score_exact(e, 0)
        assert score == 3 and cert.payload.order == (0, 1, 2)

    def test_unanimous(self):
        e = E("a b c", ["c>a>b"] * 3)
        score, cert = kemeny_score_exact(e)
        assert score == 0 and cert.payload.order == (2, 0, 1)

    def test_net_max_single_ballot(self):
        e = E("a b", ["{a} > {b}"])
        score, cert = kemeny_score_exact(e, objective=NET_MAX)
        assert score == 1 and cert.payload.order == (0, 1)

    def test_net_max_follows_approval_counts(self):
        rng = random.Random(3)
        for _ in range(100):
            e = random_dichotomous(rng, rng.randint(1, 5), rng.randint(0, 6))
            app = [sum(b.level[c] == 0 and len(b.groups) == 2 for b in e.ballots) for c in range(e.m)]
            order = kemeny_score_exact(e, objective=NET_MAX)[1].payload.order
            assert all(app[x] >= app[y] for x, y in zip(order, order[1:]))

    def test_budget(self):
        e = E(" ".join("abcdefgh"), [])
        with pytest.raises(BudgetExceeded):
            kemeny_score_exact(e)


class TestWeakConsensus:
    def test_weak_orders_count(self):
        # ordered set partitions of 4 items: the Fubini number 75
        assert len(list(weak_orders(range(4), 4))) == 75
        assert len(list(weak_orders(range(3), 2))) == 1 + 6

    def test_best_dichotomy(self):
        e = E("a b c", APPROVALS)
        score, cert = dichotomous_consensus_exact(e, 2)
        assert score == 4 and cert.payload.groups == (frozenset({0}), frozenset({1, 2}))

    def test_forced_top(self):
        e = E("a b c", APPROVALS)
        score, cert = dichotomous_consensus_exact(e, 2, p=1)
        assert score == 2 and cert.payload.groups == (frozenset({0, 1}), frozenset({2}))

    def test_k_equal_m_net_max_matches_total_orders(self):
        rng = random.Random(4)
        for _ in range(60):
            e = random_dichotomous(rng, rng.randint(1, 4), rng.randint(0, 6))
            assert (dichotomous_consensus_exact(e, e.m, NET_MAX)[0]
                    == kemeny_score_exact(e, objective=NET_MAX)[0])
            # with p forced on top a weak order may still tie p with stronger rivals
            for p in range(e.m):
                assert (dichotomous_consensus_exact(e, e.m, NET_MAX, p=p)[0]
                        >= kemeny_score_exact(e, p, NET_MAX)[0])

    def test_k_equal_m_slater_can_beat_total_orders_on_ties(self):
        e = E("a b", ["a>b", "b>a"])
        assert slater_score_exact(e, 0)[0] == 1
        assert slater_score_exact(e, 0, k=2)[0] == 2


class TestSlater:
    def test_perfect_order(self):
        e = E("a b c", ["a>b>c"])
        score, cert = slater_score_exact(e)
        assert score == 6 and cert.payload.order == (0, 1, 2)

    def test_forced_last_of_majority(self):
        e = E("a b c", ["a>b>c"])
        score, cert = slater_score_exact(e, 2)
        # only {a,b} can agree once c is on top
        assert score == 2 and cert.payload.order == (2, 0, 1)

    def test_inverted_pair_loses_two(self):
        from electscore.ballots import consensus_score

        e = E("a b c", ["a>b>c"])
        assert consensus_score(e, Ballot.from_order([1, 0, 2]), SLATER) == 4

    def test_certificates_replay(self):
        rng = random.Random(8)
        for _ in range(40):
            e = random_total(rng, rng.randint(1, 4), rng.randint(0, 5))
            for p in range(e.m):
                for rule, (score, cert) in (
                    (SLATER, slater_score_exact(e, p)),
                    (KEMENY_MIN, kemeny_score_exact(e, p)),
                    (NET_MAX, kemeny_score_exact(e, p, NET_MAX)),
                ):
                    assert replay_certificate(e, cert, rule, p) == score
