"""Diagram model, SGD parsing/serialization, and the validator."""

import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_diagram
from sglink import (
    Crossing,
    Diagram,
    DomainError,
    Edge,
    SgdParseError,
    canonical_diagram,
    parse_sgd,
    serialize_sgd,
    validate,
)

HOPF_TEXT = """\
sgd 1
vertex v1
vertex v2
edge e1 v1 v1
edge e2 v2 v2
crossing x1 over e1 0 under e2 0 sign +
crossing x2 over e2 1 under e1 1 sign +
"""

DATA = Path(__file__).parent / "data"


class TestParse:
    def test_empty_diagram(self):
        d = parse_sgd("sgd 1\nvertex a\nvertex b\n")
        assert d.vertices == ("a", "b")
        assert d.edges == () and d.crossings == ()
        assert len(d.components) == 2

    def test_hopf(self):
        d = parse_sgd(HOPF_TEXT)
        assert [c.edge_ids for c in d.components] == [("e1",), ("e2",)]
        assert d.crossing_map["x1"].sign == 1
        assert d.passage_count("e1") == 2

    def test_comments_and_blanks(self):
        d = parse_sgd("# leading comment\n\nsgd 1\nvertex a  # trailing\n\n")
        assert d.vertices == ("a",)

    def test_passage_gap_is_an_error(self):
        text = (
            "sgd 1\nvertex v\nedge e1 v v\nedge e2 v v\n"
            "crossing x1 over e1 0 under e2 0 sign +\n"
            "crossing x2 over e1 2 under e2 1 sign +\n"
        )
        with pytest.raises(SgdParseError, match="passage"):
            parse_sgd(text)

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("vertex a\n", "header"),
            ("sgd 2\nvertex a\n", "header"),
            ("sgd 1\nvertex a\nvertex a\n", "duplicate vertex"),
            ("sgd 1\nvertex a\nedge e a b\n", "undeclared vertex"),
            ("sgd 1\nedge e a a\n", "undeclared vertex"),
            ("sgd 1\nvertex a\nedge e a a\nvertex b\n", "after edges"),
            ("sgd 1\nvertex a\nedge e a a\ncrossing x over e 0 under f 0 sign +\n", "undeclared edge"),
            ("sgd 1\nvertex a\nedge e a a\ncrossing x over e 0 under e 1 sign *\n", "sign"),
            ("sgd 1\nvertex a\nedge e a a\ncrossing x over e ? under e 1 sign +\n", "passage index"),
            ("sgd 1\nvertex a-b\n", "identifier"),
            ("sgd 1\nfoo a\n", "unknown declaration"),
            ("sgd 1\nvertex\n", "expected"),
        ],
    )
    def test_rejects(self, text, fragment):
        with pytest.raises(SgdParseError, match=fragment):
            parse_sgd(text)

    def test_error_carries_line_number(self):
        with pytest.raises(SgdParseError) as err:
            parse_sgd("sgd 1\nvertex a\nvertex a\n")
        assert err.value.line == 3
        assert "line 3" in str(err.value)


class TestSerialize:
    def test_round_trip_hopf(self):
        d = parse_sgd(HOPF_TEXT)
        assert parse_sgd(serialize_sgd(d)) == d

    def test_empty_is_header_only(self):
        assert serialize_sgd(Diagram(())) == "sgd 1\n"

    def test_golden_canonical_hopf(self):
        golden = (DATA / "canonical_1_1_1.sgd").read_text(encoding="utf-8")
        assert serialize_sgd(canonical_diagram(1, 1, (1,))) == golden

    def test_deterministic_bytes(self):
        # same value built in a different declaration order
        a = Diagram(("q", "p"), (Edge("e2", "p", "q"), Edge("e1", "q", "p")))
        b = Diagram(("p", "q"), (Edge("e1", "q", "p"), Edge("e2", "p", "q")))
        assert a == b
        assert serialize_sgd(a) == serialize_sgd(b)

    def test_round_trip_random(self):
        rng = random.Random(2024)
        for _ in range(120):
            d = random_diagram(rng)
            assert parse_sgd(serialize_sgd(d)) == d

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_round_trip_property(self, seed):
        d = random_diagram(random.Random(seed))
        assert parse_sgd(serialize_sgd(d)) == d


class TestValidate:
    def test_valid_diagram(self):
        assert validate(parse_sgd(HOPF_TEXT)) == []

    def test_degenerate_crossing(self):
        d = Diagram(
            ("v",),
            (Edge("e", "v", "v"),),
            (Crossing("x", ("e", 0), ("e", 0), 1),),
        )
        codes = [v.code for v in validate(d)]
        assert "crossing-degenerate" in codes
        # the doubled reference also collides on the passage index
        assert "passage-duplicate" in codes

    def test_each_violation_class(self):
        edge = Edge("e", "v", "v")
        cases = {
            "duplicate-id": Diagram(("v", "v"), (edge,)),
            "dangling-vertex": Diagram(("v",), (Edge("f", "v", "w"),)),
            "dangling-edge": Diagram(("v",), (edge,), (Crossing("x", ("g", 0), ("e", 0), 1),)),
            "bad-sign": Diagram(("v",), (edge,), (Crossing("x", ("e", 0), ("e", 1), 2),)),
            "passage-gap": Diagram(("v",), (edge,), (Crossing("x", ("e", 0), ("e", 2), 1),)),
            "bad-identifier": Diagram(("v w",), ()),
        }
        for code, diagram in cases.items():
            assert code in [v.code for v in validate(diagram)], code

    def test_component_count_check(self):
        three = parse_sgd("sgd 1\nvertex a\nvertex b\nvertex c\n")
        codes = [v.code for v in validate(three, expected_components=2)]
        assert codes == ["component-count"]
        assert validate(three) == []


class TestComponents:
    def test_order_by_smallest_vertex(self):
        d = parse_sgd("sgd 1\nvertex z9\nvertex a0\nedge e1 z9 z9\n")
        assert d.components[0].vertices == ("a0",)
        assert d.components[1].edge_ids == ("e1",)

    def test_component_lookup(self):
        d = parse_sgd(HOPF_TEXT)
        assert d.component_of_edge("e1") == 1
        assert d.component_of_edge("e2") == 2
        assert d.component_of_vertex("v2") == 2
        with pytest.raises(DomainError):
            d.component(3)
        with pytest.raises(DomainError):
            d.component_of_edge("nope")

    def test_multi_edge_component(self):
        d = parse_sgd(
            "sgd 1\nvertex a\nvertex b\nvertex c\nvertex d\nedge e1 a b\nedge e2 b c\n"
        )
        assert len(d.components) == 2
        assert d.components[0].vertices == ("a", "b", "c")
