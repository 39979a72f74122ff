"""Election instances built from graphs, with checkable score identities.

Each construction turns one or two graphs into a dichotomous (or
trichotomous) election whose Young/strongYoung scores are tied to the
independence numbers of the graphs.  :func:`verify_forge` re-derives those
identities, either exhaustively or by replaying the witness subsets.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ballots import (
    Ballot, Election, is_condorcet_winner, majority_table, restrict_voters,
)
from .errors import BudgetExceeded, InvalidElection
from .oracles import DEFAULT_BUDGET, OracleBudget, young_score_exact

KINDS = (
    "youngscore",
    "strongyoungscore",
    "youngranking",
    "strongyoungranking",
    "strongyoungwinner",
    "trichotomous-youngwinner",
)
PAIR_KINDS = KINDS[2:]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n_vertices-1``."""

    n_vertices: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidElection(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise InvalidElection(f"edge {u}-{v} out of range")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise InvalidElection(f"duplicate edge {e[0]}-{e[1]}")
            norm.add(e)
        object.__setattr__(self, "edges", frozenset(norm))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_independent(self, vertices) -> bool:
        vs = set(vertices)
        return all(not (u in vs and v in vs) for u, v in self.edges)


def independence_number(graph: Graph, max_vertices: int = 24):
    """Exact ``(alpha, maximum independent set)`` by branch and bound on bitmasks."""
    n = graph.n_vertices
    if n > max_vertices:
        raise BudgetExceeded(f"{n} vertices exceed the independent-set budget of {max_vertices}")
    nbr = [0] * n
    for u, v in graph.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    best = [0, 0]

    def search(cand, chosen, size):
        if size + bin(cand).count("1") <= best[0]:
            return
        if not cand:
            best[0], best[1] = size, chosen
            return
        # a vertex with no neighbours left is always safe to take
        pick, pick_deg = -1, -1
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            deg = bin(nbr[v] & cand).count("1")
            if deg == 0:
                search(cand & ~(1 << v), chosen | 1 << v, size + 1)
                return
            if deg > pick_deg:
                pick, pick_deg = v, deg
        bit = 1 << pick
        search(cand & ~bit & ~nbr[pick], chosen | bit, size + 1)
        search(cand & ~bit, chosen, size)

    search((1 << n) - 1, 0, 0)
    witness = tuple(v for v in range(n) if best[1] >> v & 1)
    return best[0], witness


@dataclass(frozen=True)
class ScoreClaim:
    """``rule``-score of ``candidate`` ``relation`` ``value`` (``==`` or ``<=``)."""

    rule: str
    candidate: str
    relation: str
    value: int
    formula: str
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class RelationClaim:
    """``ranking``: score(p) >= score(r); ``winner``: p has a maximum score.

    ``expected`` is the truth value implied by the independence numbers.
    """

    kind: str
    rule: str
    candidate: str
    other: str | None
    expected: bool
    formula: str


@dataclass(frozen=True)
class ForgedInstance:
    kind: str
    election: Election
    graphs: tuple[tuple[str, Graph], ...]
    alphas: tuple[tuple[str, int, tuple[int, ...]], ...]
    claims: tuple[ScoreClaim, ...]
    relations: tuple[RelationClaim, ...] = ()
    voter_types: tuple[str, ...] = field(default=())


def _edge_name(prefix, e):
    return f"{prefix}{e[0] + 1}_{e[1] + 1}"


class _Builder:
    def __init__(self, names):
        self.names = list(names)
        self.index = {nm: i for i, nm in enumerate(self.names)}
        self.ballots = []
        self.types = []

    def add(self, vtype, *groups, count=1):
        """Append ``count`` ballots; unmentioned candidates form the last group.

        An empty first group puts them on top instead.
        """
        m = len(self.names)
        sets = [frozenset(self.index[x] for x in g) for g in groups if g]
        rest = frozenset(range(m)).difference(*sets)
        if rest:
            if groups and not groups[0]:
                sets.insert(0, rest)
            else:
                sets.append(rest)
        ballot = Ballot(tuple(s for s in sets if s))
        for _ in range(count):
            self.ballots.append(ballot)
            self.types.append(vtype)
        return len(self.ballots) - count

    def election(self):
        return Election(tuple(self.names), tuple(self.ballots))


def _check_pair(G, H):
    if H is None:
        raise InvalidElection("this construction needs two graphs")
    if G.n_vertices != H.n_vertices:
        raise InvalidElection("both graphs need the same number of vertices")
    if not G.edges or not H.edges:
        raise InvalidElection("both graphs need at least one edge")


def forge(kind: str, G: Graph, H: Graph | None = None) -> ForgedInstance:
    if kind not in KINDS:
        raise ValueError(f"unknown forge kind {kind!r}")
    if kind in ("youngscore", "strongyoungscore"):
        return _forge_score(kind, G)
    _check_pair(G, H)
    if kind == "trichotomous-youngwinner":
        return _forge_trichotomous(G, H)
    return _forge_ranking(kind, G, H)


def _forge_score(kind, G):
    alpha, mis = independence_number(G)
    edges = G.sorted_edges()
    enames = [_edge_name("e", e) for e in edges]
    b = _Builder(enames + ["p"])
    for v in range(G.n_vertices):
        b.add("vertex", [enames[i] for i, e in enumerate(edges) if v in e])
    p_voters = [b.add("p", ["p"])]
    if kind == "strongyoungscore":
        p_voters.append(b.add("p", ["p"]))
        claim = ScoreClaim("strongyoung", "p", "==", alpha + 2, "alpha(G)+2",
                           tuple(sorted(list(mis) + p_voters)))
    else:
        claim = ScoreClaim("young", "p", "==", alpha + 1, "alpha(G)+1",
                           tuple(sorted(list(mis) + p_voters)))
    return ForgedInstance(kind, b.election(), (("G", G),), (("G", alpha, mis),), (claim,),
                          voter_types=tuple(b.types))


def _forge_ranking(kind, G, H):
    aG, misG = independence_number(G)
    aH, misH = independence_number(H)
    nG, nH = G.n_vertices, H.n_vertices
    gE = [_edge_name("g", e) for e in G.sorted_edges()]
    hE = [_edge_name("h", e) for e in H.sorted_edges()]
    clones = kind == "strongyoungwinner"

    def hat(names):
        return [x for nm in names for x in ((nm, nm + ".c") if clones else (nm,))]

    roster = hat(gE) + hat(hE) + ["p", "r"]
    b = _Builder(roster)
    typeI = [b.add("I", ["r"] + hat(hE) + hat([gE[i] for i, e in enumerate(G.sorted_edges()) if v in e]))
             for v in range(nG)]
    typeII = [b.add("II", hat(hE) + ["p", "r"])]
    typeIII = [b.add("III", ["p"] + hat(gE) + hat([hE[i] for i, e in enumerate(H.sorted_edges()) if v in e]))
               for v in range(nH)]
    typeIV = [b.add("IV", hat(gE) + ["p", "r"])]
    strong = kind != "youngranking"
    if strong:
        typeII.append(b.add("II+", hat(hE) + ["p", "r"]))
        typeIV.append(b.add("IV+", hat(gE) + ["p", "r"]))
    rule = "strongyoung" if strong else "young"
    extra = 4 if strong else 2
    wit_p = tuple(sorted([typeI[v] for v in misG] + typeII + typeIII + typeIV))
    wit_r = tuple(sorted(typeI + typeII + [typeIII[v] for v in misH] + typeIV))
    claims = [
        ScoreClaim(rule, "p", "==", aG + nH + extra, f"alpha(G)+|V(H)|+{extra}", wit_p),
        ScoreClaim(rule, "r", "==", aH + nG + extra, f"alpha(H)+|V(G)|+{extra}", wit_r),
    ]
    relations = []
    if clones:
        for nm in hat(gE) + hat(hE):
            claims.append(ScoreClaim(rule, nm, "==", 0, "0 (clone-tied)"))
        relations.append(RelationClaim("winner", rule, "p", None, aG >= aH, "p wins iff alpha(G) >= alpha(H)"))
    else:
        relations.append(RelationClaim("ranking", rule, "p", "r", aG >= aH,
                                       "score(p) >= score(r) iff alpha(G) >= alpha(H)"))
    return ForgedInstance(kind, b.election(), (("G", G), ("H", H)),
                          (("G", aG, misG), ("H", aH, misH)), tuple(claims), tuple(relations),
                          tuple(b.types))


def _forge_trichotomous(G, H):
    aG, misG = independence_number(G)
    aH, misH = independence_number(H)
    nG, nH = G.n_vertices, H.n_vertices
    B = nG
    gE = [_edge_name("g", e) for e in G.sorted_edges()]
    hE = [_edge_name("h", e) for e in H.sorted_edges()]

    def hat(names):
        return [x for nm in names for x in (nm, nm + ".p", nm + ".pp")]

    roster = hat(gE) + hat(hE) + ["p", "r"]
    b = _Builder(roster)
    typeI = [b.add("I", ["r"] + hat(hE) + hat([gE[i] for i, e in enumerate(G.sorted_edges()) if v in e]))
             for v in range(nG)]
    b.add("II", hat(hE) + ["p", "r"])
    typeIII = [b.add("III", ["p"] + hat(gE) + hat([hE[i] for i, e in enumerate(H.sorted_edges()) if v in e]))
               for v in range(nH)]
    b.add("IV", hat(gE) + ["p", "r"])
    for e in gE + hE:
        c0, c1, c2 = e, e + ".p", e + ".pp"
        for x, y in ((c0, c1), (c1, c2), (c2, c0)):
            b.add("V", [x], [y], count=B)
            b.add("V", [], [x], [y], count=B)
    election = b.election()
    n = election.n
    everyone = set(range(n))
    wit_p = tuple(sorted(everyone - {typeI[v] for v in range(nG) if v not in misG}))
    wit_r = tuple(sorted(everyone - {typeIII[v] for v in range(nH) if v not in misH}))
    claims = [
        ScoreClaim("young", "p", "==", n - nG + aG, "n-|V(G)|+alpha(G)", wit_p),
        ScoreClaim("young", "r", "==", n - nH + aH, "n-|V(H)|+alpha(H)", wit_r),
    ]
    for nm in hat(gE) + hat(hE):
        claims.append(ScoreClaim("young", nm, "<=", n - 2 * B, "n-2|V(G)|"))
    relations = (RelationClaim("winner", "young", "p", None, aG >= aH, "p wins iff alpha(G) >= alpha(H)"),)
    return ForgedInstance("trichotomous-youngwinner", election, (("G", G), ("H", H)),
                          (("G", aG, misG), ("H", aH, misH)), tuple(claims), relations,
                          tuple(b.types))


def drop_voter(instance: ForgedInstance, voter: int) -> ForgedInstance:
    """A corrupted copy with one ballot removed and the claims left untouched."""
    keep = [v for v in range(instance.election.n) if v != voter]
    return ForgedInstance(instance.kind, restrict_voters(instance.election, keep), instance.graphs,
                          instance.alphas, instance.claims, instance.relations, instance.voter_types)


# -- verification -------------------------------------------------------------

@dataclass(frozen=True)
class CheckRow:
    name: str
    expected: object
    observed: object
    status: str


FAILING = ("mismatch", "invalid-witness")


@dataclass(frozen=True)
class VerifyReport:
    kind: str
    mode: str
    rows: tuple[CheckRow, ...]

    @property
    def ok(self) -> bool:
        return not any(r.status in FAILING for r in self.rows)

    def lines(self) -> list[str]:
        return [f"{r.status:>15}  {r.name}: expected {r.expected}, observed {r.observed}"
                for r in self.rows]


def pairwise_upper_bound(election: Election, c: int, strong: bool = False) -> int:
    """Upper bound on the (strong)Young score of ``c`` from its worst pairwise deficit.

    Any kept subset must drop at least the surplus of every rival over ``c``.
    """
    table = majority_table(election)
    worst = 0
    for a in range(election.m):
        if a == c:
            continue
        surplus = table.net(a, c)
        worst = max(worst, surplus + 1 if strong and surplus >= 0 else surplus)
    return max(0, election.n - worst)


def _witness_ok(election, claim, c):
    w = claim.witness
    if w is None or len(set(w)) != len(w) or any(not 0 <= v < election.n for v in w):
        return False
    sub = restrict_voters(election, w)
    strong = claim.rule == "strongyoung"
    if strong and sub.n == 0:
        return False
    return is_condorcet_winner(majority_table(sub), c, weak=not strong) and len(w) == claim.value


def verify_forge(instance: ForgedInstance, mode: str = "full",
                 budget: OracleBudget = DEFAULT_BUDGET) -> VerifyReport:
    """Check every claim of a forged instance.

    ``full`` recomputes all scores with the subset oracle and the independence
    numbers exactly.  ``witness-only`` replays the witness subsets (lower
    bounds), certifies ``<=`` claims with :func:`pairwise_upper_bound` and checks
    that the relation claims follow from the claimed values.
    """
    if mode not in ("full", "witness-only"):
        raise ValueError(f"unknown verification mode {mode!r}")
    e = instance.election
    rows = [CheckRow("voter count", len(instance.voter_types), e.n,
                     "ok" if len(instance.voter_types) == e.n else "mismatch")]
    graphs = dict(instance.graphs)
    for label, alpha, mis in instance.alphas:
        g = graphs[label]
        if mode == "full":
            got, _ = independence_number(g)
            rows.append(CheckRow(f"alpha({label})", alpha, got, "ok" if got == alpha else "mismatch"))
        else:
            good = g.is_independent(mis) and len(set(mis)) == alpha
            rows.append(CheckRow(f"alpha({label})", alpha, len(mis), "lower-bound" if good else "invalid-witness"))

    if mode == "full" and e.n > budget.max_voters:
        raise BudgetExceeded(f"{e.n} voters exceed the subset budget; use witness-only mode")

    cache: dict[tuple[str, int], int] = {}

    def score(rule, c):
        key = (rule, c)
        if key not in cache:
            cache[key] = young_score_exact(e, c, strong=rule == "strongyoung", budget=budget)[0]
        return cache[key]

    claimed = {}
    for claim in instance.claims:
        c = e.index(claim.candidate)
        name = f"{claim.rule}({claim.candidate}) {claim.relation} {claim.formula}"
        claimed[(claim.rule, claim.candidate)] = claim.value
        if mode == "full":
            got = score(claim.rule, c)
            good = got == claim.value if claim.relation == "==" else got <= claim.value
            rows.append(CheckRow(name, claim.value, got, "ok" if good else "mismatch"))
        elif claim.relation == "==":
            if claim.witness is None:
                rows.append(CheckRow(name, claim.value, None, "unverified"))
            else:
                good = _witness_ok(e, claim, c)
                rows.append(CheckRow(name, claim.value, len(claim.witness),
                                     "lower-bound" if good else "invalid-witness"))
        else:
            ub = pairwise_upper_bound(e, c, strong=claim.rule == "strongyoung")
            rows.append(CheckRow(name, claim.value, ub, "upper-bound" if ub <= claim.value else "unverified"))

    for rel in instance.relations:
        if mode == "full":
            if rel.kind == "ranking":
                got = score(rel.rule, e.index(rel.candidate)) >= score(rel.rule, e.index(rel.other))
            else:
                scores = [score(rel.rule, c) for c in range(e.m)]
                got = scores[e.index(rel.candidate)] == max(scores)
            rows.append(CheckRow(rel.formula, rel.expected, got, "ok" if got == rel.expected else "mismatch"))
        else:
            values = {cand: v for (rule, cand), v in claimed.items() if rule == rel.rule}
            mine = values.get(rel.candidate)
            if rel.kind == "ranking":
                got = mine >= values[rel.other]
            else:
                got = all(mine >= v for cand, v in values.items())
            rows.append(CheckRow(rel.formula, rel.expected, got,
                                 "consistent" if got == rel.expected else "mismatch"))
    return VerifyReport(instance.kind, mode, tuple(rows))


# -- claims sidecar -------------------------------------------------------------

def graph_to_dict(g: Graph) -> dict:
    return {"vertices": g.n_vertices, "edges": [[u + 1, v + 1] for u, v in g.sorted_edges()]}


def graph_from_dict(d: dict) -> Graph:
    return Graph(int(d["vertices"]), frozenset((u - 1, v - 1) for u, v in d["edges"]))


def claims_to_dict(instance: ForgedInstance) -> dict:
    """JSON-ready sidecar; vertex and voter numbers are 1-based."""
    return {
        "kind": instance.kind,
        "voters": instance.election.n,
        "graphs": {label: graph_to_dict(g) for label, g in instance.graphs},
        "alphas": [{"graph": label, "value": a, "witness": [v + 1 for v in mis]}
                   for label, a, mis in instance.alphas],
        "claims": [
            {"rule": c.rule, "candidate": c.candidate, "relation": c.relation, "value": c.value,
             "formula": c.formula,
             "witness": None if c.witness is None else [v + 1 for v in c.witness]}
            for c in instance.claims
        ],
        "relations": [
            {"kind": r.kind, "rule": r.rule, "candidate": r.candidate, "other": r.other,
             "expected": r.expected, "formula": r.formula}
            for r in instance.relations
        ],
        "voter_types": list(instance.voter_types),
    }


def claims_from_dict(d: dict, election: Election) -> ForgedInstance:
    graphs = tuple((label, graph_from_dict(g)) for label, g in d["graphs"].items())
    alphas = tuple((a["graph"], a["value"], tuple(v - 1 for v in a["witness"])) for a in d["alphas"])
    claims = tuple(
        ScoreClaim(c["rule"], c["candidate"], c["relation"], c["value"], c["formula"],
                   None if c["witness"] is None else tuple(v - 1 for v in c["witness"]))
        for c in d["claims"]
    )
    relations = tuple(
        RelationClaim(r["kind"], r["rule"], r["candidate"], r["other"], r["expected"], r["formula"])
        for r in d["relations"]
    )
    return ForgedInstance(d["kind"], election, graphs, alphas, claims, relations,
                          tuple(d["voter_types"]))
