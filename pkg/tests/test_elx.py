import pytest

from electscore.ballots import Election
from electscore.elx import (
    certificate_fields, parse_certificate, parse_election, parse_graph, serialize_election,
    serialize_graph,
)
from electscore.errors import ParseError
from electscore.oracles import dodgson_score_exact, kemeny_score_exact, young_score_exact


def test_grammar_demo():
    e = parse_election(b"candidates: a b p\nvote[2]: p | a b\nvote: a | b p\n")
    assert e.n == 3 and e.ballots[0] == e.ballots[1]
    assert e.ballots[0].groups == (frozenset({2}), frozenset({0, 1}))


def test_axis_attached():
    e = parse_election("candidates: a b p\naxis: a p b\nvote: a | p | b\n")
    assert e.axis == (0, 2, 1)


def test_comments_and_blank_lines():
    e = parse_election("# header\n\ncandidates: a b  # roster\nvote: a | b # first\n")
    assert e.n == 1


@pytest.mark.parametrize("text,line,col", [
    ("candidates: a b\nvote: a | a b\n", 2, 11),
    ("candidates: a b\nvote: a | c\n", 2, 11),
    ("candidates: a b c\nvote: a | b\n", 2, 12),
    ("vote: a\ncandidates: a\n", 1, 1),
    ("candidates: a b\nvote: a | | b\n", 2, 11),
    ("candidates: a a\n", 1, 15),
    ("candidates: a b\nvote[0]: a | b\n", 2, 6),
    ("candidates: a b\nballot: a | b\n", 2, 1),
    ("candidates: a b\naxis: a\n", 2, 8),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_election(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"line {line}, column {col}: ")


def test_invalid_utf8():
    with pytest.raises(ParseError):
        parse_election(b"candidates: \xff\n")


def test_canonical_round_trip():
    text = ("candidates: a b p\naxis: a p b\nvote[2]: p | a b\nvote: a | b p\n"
            "vote: a b p\nvote[3]: b | a | p\n")
    assert serialize_election(parse_election(text)) == text


def test_canonical_form_sorts_groups_and_merges_runs():
    e = parse_election("candidates: a b c\nvote: c b | a\nvote: b c | a\n")
    assert serialize_election(e) == "candidates: a b c\nvote[2]: b c | a\n"


def test_parse_serialize_identity():
    e = Election.from_strings("x y z", ["x>y>z", "{y,z}>x", "x y z"], axis="z x y")
    assert parse_election(serialize_election(e)) == e


class TestGraphFormat:
    def test_path(self):
        g = parse_graph("graph: 3\nedge: 1 2\nedge: 2 3\n")
        assert g.n_vertices == 3 and g.edges == {(0, 1), (1, 2)}

    def test_edgeless(self):
        assert parse_graph("graph: 2\n").edges == frozenset()

    @pytest.mark.parametrize("text", [
        "graph: 2\nedge: 2 2\n", "graph: 2\nedge: 1 3\n", "graph: 3\nedge: 1 2\nedge: 1 2\n",
        "graph: 3\nedge: 2 1\n", "edge: 1 2\n", "graph: x\n",
    ])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_graph(text)

    def test_round_trip(self):
        text = "graph: 4\nedge: 1 2\nedge: 1 4\nedge: 3 4\n"
        assert serialize_graph(parse_graph(text)) == text


def test_certificate_fields_round_trip():
    e = Election.from_strings("a b p", ["a>b>p", "b>p>a", "p>a>b"])
    for cert in (young_score_exact(e, 2)[1], dodgson_score_exact(e, 2)[1],
                 kemeny_score_exact(e, 2)[1]):
        assert parse_certificate(e, certificate_fields(e, cert)) == cert
