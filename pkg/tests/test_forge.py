import itertools
import random

import pytest

from electscore.ballots import is_condorcet_winner, majority_table, restrict_voters
from electscore.domains import check_kchotomous
from electscore.errors import BudgetExceeded, InvalidElection
from electscore.forge import (
    Graph, claims_from_dict, claims_to_dict, drop_voter, forge, independence_number,
    pairwise_upper_bound, verify_forge,
)
from electscore.generate import random_graph
from electscore.oracles import young_score_exact

K2 = Graph(2, frozenset({(0, 1)}))
P3 = Graph(3, frozenset({(0, 1), (1, 2)}))
K3 = Graph(3, frozenset({(0, 1), (1, 2), (0, 2)}))


def brute_alpha(g):
    return max(len(s) for r in range(g.n_vertices + 1)
               for s in itertools.combinations(range(g.n_vertices), r) if g.is_independent(s))


class TestGraph:
    @pytest.mark.parametrize("edges", [{(1, 1)}, {(0, 5)}])
    def test_invalid_edges(self, edges):
        with pytest.raises(InvalidElection):
            Graph(3, frozenset(edges))

    def test_duplicate_edge_after_normalizing(self):
        with pytest.raises(InvalidElection):
            Graph(3, frozenset({(0, 1), (1, 0)}))


class TestIndependence:
    def test_examples(self):
        assert independence_number(K3)[0] == 1
        assert independence_number(P3) == (2, (0, 2))
        assert independence_number(Graph(5))[0] == 5

    def test_matches_enumeration(self):
        rng = random.Random(1)
        for _ in range(150):
            g = random_graph(rng, rng.randint(0, 9), rng.random())
            alpha, witness = independence_number(g)
            assert alpha == brute_alpha(g) == len(witness) and g.is_independent(witness)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            independence_number(Graph(25))


class TestForge:
    def test_triangle(self):
        inst = forge("youngscore", K3)
        e = inst.election
        assert (e.n, e.m) == (4, 4) and inst.claims[0].value == 2
        assert young_score_exact(e, e.index("p"))[0] == 2

    def test_path(self):
        assert forge("youngscore", P3).claims[0].value == 3

    def test_domains(self):
        for kind in ("youngscore", "strongyoungscore"):
            assert check_kchotomous(forge(kind, P3).election, 2)
        for kind in ("youngranking", "strongyoungranking", "strongyoungwinner"):
            assert check_kchotomous(forge(kind, P3, K3).election, 2)
        tri = forge("trichotomous-youngwinner", P3, K3).election
        assert check_kchotomous(tri, 3) and not check_kchotomous(tri, 2)

    def test_pair_preconditions(self):
        with pytest.raises(InvalidElection):
            forge("youngranking", K2, K3)
        with pytest.raises(InvalidElection):
            forge("youngranking", Graph(2), K2)
        with pytest.raises(InvalidElection):
            forge("youngranking", K2)

    def test_trichotomous_two_edges(self):
        inst = forge("trichotomous-youngwinner", K2, K2)
        e, p = inst.election, inst.election.index("p")
        assert e.n == 30 and inst.claims[0].value == 29
        hint = inst.claims[0].witness
        assert len(hint) == 29
        assert is_condorcet_winner(majority_table(restrict_voters(e, hint)), p, weak=True)
        assert not is_condorcet_winner(majority_table(e), p, weak=True)
        report = verify_forge(inst, "witness-only")
        assert report.ok

    def test_full_mode_budget(self):
        with pytest.raises(BudgetExceeded):
            verify_forge(forge("trichotomous-youngwinner", K2, K2), "full")


class TestVerify:
    def test_small_graphs_full(self):
        rng = random.Random(2)
        for _ in range(40):
            g = random_graph(rng, rng.randint(1, 6), rng.random())
            for kind in ("youngscore", "strongyoungscore"):
                assert verify_forge(forge(kind, g), "full").ok

    def test_ranking_kinds_full(self):
        for G, H in ((K2, K2), (P3, K3), (K3, P3)):
            for kind in ("youngranking", "strongyoungranking", "strongyoungwinner"):
                inst = forge(kind, G, H)
                assert verify_forge(inst, "full").ok
                assert verify_forge(inst, "witness-only").ok

    def test_strong_ranking_offsets(self):
        inst = forge("strongyoungranking", P3, K3)
        e = inst.election
        assert young_score_exact(e, e.index("p"), strong=True)[0] == 2 + 3 + 4
        assert young_score_exact(e, e.index("r"), strong=True)[0] == 1 + 3 + 4

    def test_clones_score_zero(self):
        inst = forge("strongyoungwinner", P3, K3)
        e = inst.election
        for name in e.candidates:
            if name not in ("p", "r"):
                assert young_score_exact(e, e.index(name), strong=True)[0] == 0

    def test_dominance_of_type_three_and_four(self):
        inst = forge("youngranking", P3, K3)
        _, cert = young_score_exact(inst.election, inst.election.index("p"))
        kept = set(cert.payload)
        assert all(v in kept for v, t in enumerate(inst.voter_types) if t in ("III", "IV"))

    def test_dropped_ballot_flagged(self):
        inst = forge("youngscore", K3)
        bad = drop_voter(inst, inst.election.n - 1)
        report = verify_forge(bad, "full")
        assert not report.ok
        assert any(r.status == "mismatch" and r.name.startswith("young(p)") for r in report.rows)
        assert not verify_forge(bad, "witness-only").ok

    def test_upper_bound_is_sound(self):
        rng = random.Random(3)
        for _ in range(30):
            G, H = random_graph(rng, 3, 0.7), random_graph(rng, 3, 0.7)
            if not G.edges or not H.edges:
                continue
            e = forge("youngranking", G, H).election
            for c in range(e.m):
                for strong in (False, True):
                    assert young_score_exact(e, c, strong)[0] <= pairwise_upper_bound(e, c, strong)

    def test_claims_round_trip(self):
        inst = forge("strongyoungwinner", P3, K3)
        assert claims_from_dict(claims_to_dict(inst), inst.election) == inst
