"""Text formats: ``.elx`` elections, ``.graph`` graphs and certificates.

An ``.elx`` file looks like::

    # comment
    candidates: a b p
    axis: a p b
    vote[2]: p | a b
    vote: a | b p

``candidates:`` comes first, groups are separated by ``|`` and ``vote[c]:``
stands for ``c`` identical ballots.  :func:`serialize_election` writes the
canonical form (names in roster order, runs of equal ballots merged), so
parsing and serializing a canonical file reproduces it byte for byte.
"""
from __future__ import annotations

import json
import re

from .ballots import (
    CONSENSUS_ORDER, MOVE_SEQUENCE, NAME_RE, VOTER_SUBSET, Ballot, Election, ScoreCertificate,
)
from .errors import InvalidElection, ParseError

_TOKEN = re.compile(r"\||[^\s|]+")
_KEYWORD = re.compile(r"(candidates|axis|vote(?:\[([^\]]*)\])?|graph|edge):")


def _decode(data) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8 ({exc.reason} at byte {exc.start})") from exc
    return data


def _lines(text: str):
    """Yield ``(line_no, keyword, count_text, body, body_col)`` for non-blank lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        m = _KEYWORD.match(stripped)
        if not m:
            raise ParseError(f"unrecognized line {stripped.split()[0]!r}", no, indent + 1)
        yield no, m.group(1).split("[")[0], m.group(2), stripped[m.end():], indent + m.end() + 1


def _tokens(body: str, col0: int):
    return [(t.group(), col0 + t.start()) for t in _TOKEN.finditer(body)]


def _names(tokens, line, what):
    out = []
    for tok, col in tokens:
        if tok == "|" or not NAME_RE.match(tok):
            raise ParseError(f"invalid name {tok!r} in {what}", line, col)
        out.append((tok, col))
    return out


def parse_election(data) -> Election:
    text = _decode(data)
    candidates = None
    index: dict[str, int] = {}
    axis = None
    ballots: list[Ballot] = []
    for line, kw, count_text, body, col0 in _lines(text):
        toks = _tokens(body, col0)
        if candidates is None:
            if kw != "candidates":
                raise ParseError("the first line must be 'candidates:'", line, 1)
            candidates = []
            for name, col in _names(toks, line, "candidates"):
                if name in index:
                    raise ParseError(f"duplicate candidate {name!r}", line, col)
                index[name] = len(candidates)
                candidates.append(name)
            if not candidates:
                raise ParseError("no candidates listed", line, col0)
        elif kw == "candidates":
            raise ParseError("second 'candidates:' line", line, 1)
        elif kw == "axis":
            if axis is not None:
                raise ParseError("second 'axis:' line", line, 1)
            axis = []
            for name, col in _names(toks, line, "axis"):
                if name not in index:
                    raise ParseError(f"unknown candidate {name!r}", line, col)
                if index[name] in axis:
                    raise ParseError(f"candidate {name!r} repeated on the axis", line, col)
                axis.append(index[name])
            if len(axis) != len(candidates):
                missing = [c for c in candidates if index[c] not in axis]
                raise ParseError(f"axis misses {' '.join(missing)}", line, col0 + len(body))
        elif kw == "vote":
            count = 1
            if count_text is not None:
                if not count_text.isdigit() or int(count_text) < 1:
                    raise ParseError(f"bad vote count {count_text!r}", line, 6)
                count = int(count_text)
            ballot = _parse_ballot(toks, index, candidates, line, col0 + len(body))
            ballots.extend([ballot] * count)
        else:
            raise ParseError(f"'{kw}:' does not belong in an election file", line, 1)
    if candidates is None:
        raise ParseError("missing 'candidates:' line", 1, 1)
    return Election(tuple(candidates), tuple(ballots), None if axis is None else tuple(axis))


def _parse_ballot(toks, index, candidates, line, end_col) -> Ballot:
    groups: list[set[int]] = [set()]
    seen: set[int] = set()
    last_col = end_col
    for tok, col in toks:
        if tok == "|":
            if not groups[-1]:
                raise ParseError("empty group in ballot", line, col)
            groups.append(set())
            last_col = col
            continue
        if not NAME_RE.match(tok):
            raise ParseError(f"invalid name {tok!r} in ballot", line, col)
        if tok not in index:
            raise ParseError(f"unknown candidate {tok!r}", line, col)
        c = index[tok]
        if c in seen:
            raise ParseError(f"candidate {tok!r} appears twice in ballot", line, col)
        seen.add(c)
        groups[-1].add(c)
    if not groups[-1]:
        raise ParseError("empty group in ballot", line, last_col)
    if len(seen) != len(candidates):
        missing = [c for c in candidates if index[c] not in seen]
        raise ParseError(f"ballot misses {' '.join(missing)}", line, end_col)
    return Ballot(tuple(frozenset(g) for g in groups))


def serialize_election(election: Election) -> str:
    out = ["candidates: " + " ".join(election.candidates)]
    if election.axis is not None:
        out.append("axis: " + " ".join(election.candidates[c] for c in election.axis))
    i = 0
    ballots = election.ballots
    while i < len(ballots):
        j = i
        while j < len(ballots) and ballots[j] == ballots[i]:
            j += 1
        head = "vote:" if j - i == 1 else f"vote[{j - i}]:"
        out.append(f"{head} {election.format_ballot(ballots[i])}")
        i = j
    return "\n".join(out) + "\n"


def parse_graph(data):
    from .forge import Graph

    text = _decode(data)
    n = None
    edges: set[tuple[int, int]] = set()
    for line, kw, _, body, col0 in _lines(text):
        toks = _tokens(body, col0)
        if n is None:
            if kw != "graph" or len(toks) != 1 or not toks[0][0].isdigit():
                raise ParseError("the first line must be 'graph: <vertex count>'", line, 1)
            n = int(toks[0][0])
            continue
        if kw != "edge":
            raise ParseError(f"'{kw}:' does not belong in a graph file", line, 1)
        if len(toks) != 2 or not all(t.isdigit() for t, _ in toks):
            raise ParseError("expected 'edge: <u> <v>'", line, col0)
        (u, ucol), (v, vcol) = ((int(t), c) for t, c in toks)
        for x, col in ((u, ucol), (v, vcol)):
            if not 1 <= x <= n:
                raise ParseError(f"vertex {x} out of range 1..{n}", line, col)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line, vcol)
        if u > v:
            raise ParseError(f"edge endpoints must be increasing, got {u} {v}", line, ucol)
        if (u - 1, v - 1) in edges:
            raise ParseError(f"duplicate edge {u} {v}", line, ucol)
        edges.add((u - 1, v - 1))
    if n is None:
        raise ParseError("missing 'graph:' line", 1, 1)
    return Graph(n, frozenset(edges))


def serialize_graph(graph) -> str:
    out = [f"graph: {graph.n_vertices}"]
    out += [f"edge: {u + 1} {v + 1}" for u, v in graph.sorted_edges()]
    return "\n".join(out) + "\n"


def read_election(path) -> Election:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        return parse_election(data)
    except InvalidElection as exc:
        raise ParseError(str(exc)) from exc


def dump_claims(instance) -> str:
    from .forge import claims_to_dict

    return json.dumps(claims_to_dict(instance), indent=2, sort_keys=True) + "\n"


def load_claims(text: str, election: Election):
    from .forge import claims_from_dict

    try:
        return claims_from_dict(json.loads(text), election)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad claims sidecar: {exc}") from exc


# -- certificates -----------------------------------------------------------

def certificate_fields(election: Election, cert: ScoreCertificate) -> dict:
    """JSON-ready description of a certificate with 1-based voter numbers."""
    if cert.kind == VOTER_SUBSET:
        return {"kind": cert.kind, "voters": [v + 1 for v in cert.payload]}
    if cert.kind == MOVE_SEQUENCE:
        return {"kind": cert.kind, "model": cert.model,
                "moves": [[mv.voter + 1, election.candidates[mv.candidate], mv.direction]
                          for mv in cert.payload]}
    if cert.kind == CONSENSUS_ORDER:
        return {"kind": cert.kind, "order": election.format_ballot(cert.payload)}
    return {"kind": cert.kind}


def certificate_text(election: Election, cert: ScoreCertificate) -> str:
    f = certificate_fields(election, cert)
    if "voters" in f:
        return "certificate=voters:" + ",".join(map(str, f["voters"]))
    if "moves" in f:
        moves = ",".join(f"({v},{c},{d})" for v, c, d in f["moves"])
        return f"certificate=moves[{f['model']}]:{moves}"
    if "order" in f:
        return f"certificate=order:{f['order']}"
    return "certificate=none"


def parse_certificate(election: Election, fields: dict) -> ScoreCertificate:
    """Inverse of :func:`certificate_fields`."""
    kind = fields["kind"]
    if kind == VOTER_SUBSET:
        return ScoreCertificate(kind, tuple(v - 1 for v in fields["voters"]))
    if kind == MOVE_SEQUENCE:
        from .ballots import Move

        moves = tuple(Move(v - 1, election.index(c), d) for v, c, d in fields["moves"])
        return ScoreCertificate(kind, moves, fields["model"])
    if kind == CONSENSUS_ORDER:
        groups = [frozenset(election.index(x) for x in g.split()) for g in fields["order"].split("|")]
        return ScoreCertificate(kind, Ballot(tuple(groups)))
    return ScoreCertificate(kind)
