"""Young, Dodgson, Kemeny and Slater scores on restricted preference domains.

Exact exhaustive solvers live in :mod:`electscore.oracles`, polynomial-time
algorithms for dichotomous, single-peaked and single-crossing electorates in
:mod:`electscore.fast`.
"""
from .ballots import (
    KEMENY_MIN, NET_MAX, SLATER, Ballot, Election, MajorityTable, Move, ScoreCertificate,
    condorcet_winners, consensus_score, is_condorcet_winner, majority_table, replay_certificate,
    restrict_candidates, restrict_voters,
)
from .domains import check_kchotomous, check_single_crossing, check_single_peaked, median_voters
from .elx import parse_election, parse_graph, serialize_election, serialize_graph
from .errors import (
    BudgetExceeded, DomainViolation, ElectionError, InvalidElection, InvalidMove, InvalidPair,
    ParseError, UnsupportedBallotKind,
)
from .forge import Graph, ForgedInstance, forge, independence_number, verify_forge
from .oracles import (
    OracleBudget, dichotomous_consensus_exact, dodgson_score_exact, kemeny_score_exact,
    slater_score_exact, young_score_exact,
)

__version__ = "0.1.0"
