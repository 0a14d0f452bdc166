from __future__ import annotations

import json
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartograph.compare import compare, comparison_layout
from cartograph.graph import Edge, Graph, Vertex
from cartograph.io import (
    Config,
    ParseError,
    emit_edge_list,
    emit_graph,
    emit_json,
    export_layout,
    parse_config,
    parse_edge_list,
    parse_graph,
    parse_json_document,
    parse_ordering_spec,
    parse_vertex_order,
    read_layout_export,
)
from cartograph.layout import compute_layout
from cartograph.ordering import order_canonical

from .conftest import fixture_text, graph_pairs, graphs


class TestEdgeList:
    def test_basic(self):
        g = parse_edge_list("undirected\na -- b 2.5\nb -- c\nd\n")
        assert g.vertices == ("a", "b", "c", "d")
        assert g.edge("a", "b").weight == 2.5
        assert g.edge("b", "c").weight is None
        assert not g.directed

    def test_directed_with_loops_and_comments(self):
        g = parse_edge_list("# header\ndirected\nloops\nx -> x  # self\nx -> y\n")
        assert g.directed and g.loops_allowed
        assert g.edge_keys() == {("x", "x"), ("x", "y")}

    def test_loop_without_header_reports_line_two(self):
        with pytest.raises(ParseError) as exc:
            parse_edge_list("directed\na -> a\n")
        assert exc.value.line == 2
        assert "loop" in str(exc.value)

    @pytest.mark.parametrize(
        "text, line, column",
        [
            ("a -> b\n", 1, 3),
            ("directed\na -- b\n", 2, 3),
            ("a -- b\nb -- c x\n", 2, 8),
            ("a -- b\nb -- a\n", 2, 1),
            ("a ~~ b\n", 1, 3),
            ("a -- b 1 2\n", 1, 1),
            ("a -- b inf\n", 1, 8),
            ("--\n", 1, 1),
        ],
    )
    def test_error_locations(self, text, line, column):
        with pytest.raises(ParseError) as exc:
            parse_edge_list(text)
        assert (exc.value.line, exc.value.column) == (line, column)

    def test_directive_after_edges_is_a_vertex(self):
        g = parse_edge_list("a -- b\nloops\n")
        assert "loops" in g.vertices and not g.loops_allowed

    def test_fixtures_load(self):
        assert parse_edge_list(fixture_text("k8.txt")).n_edges == 28
        assert parse_edge_list(fixture_text("g8.txt")).n_edges == 11
        assert parse_edge_list(fixture_text("k63.txt")).n_edges == 1953
        h = parse_edge_list(fixture_text("h24.txt"))
        assert h.directed and not h.loops_allowed and h.n_edges == 144

    def test_ids_that_cannot_be_written(self):
        for bad in ("loops", "a b", "x#y"):
            with pytest.raises(ValueError):
                emit_edge_list(Graph([bad]))


class TestJson:
    def test_round_trip_keeps_labels(self):
        g = Graph([Vertex("a", "Alpha"), "b"], [Edge("a", "b", 1.5, "ab")], directed=True)
        doc = parse_json_document(emit_json(g, "demo"))
        assert doc.name == "demo" and doc.graph == g
        assert doc.graph.labels["a"] == "Alpha"

    def test_plain_string_vertices(self):
        text = '{"kind": {"directed": false}, "vertices": ["a", "b"], "edges": [{"source": "a", "target": "b"}]}'
        g = parse_graph(text, "json")
        assert g.edge_keys() == {("a", "b")}

    @pytest.mark.parametrize(
        "doc, where",
        [
            ({"vertices": ["a", "a"], "edges": []}, "vertices[1]"),
            ({"vertices": ["a"], "edges": [{"source": "a", "target": "z"}]}, "edges[0]"),
            ({"vertices": ["a", "b"], "edges": [{"source": "a", "target": "b"}, {"source": "b", "target": "a"}]}, "edges[1]"),
            ({"vertices": ["a"], "edges": [{"source": "a", "target": "a"}]}, "edges[0]"),
            ({"vertices": ["a", "b"], "edges": [{"source": "a", "target": "b", "weight": "x"}]}, "edges[0]"),
        ],
    )
    def test_errors_name_the_item(self, doc, where):
        with pytest.raises(ParseError, match=re.escape(where)):
            parse_json_document(json.dumps(doc))

    def test_syntax_error_has_location(self):
        with pytest.raises(ParseError) as exc:
            parse_json_document('{\n  "vertices": [,]\n}')
        assert exc.value.line == 2

    def test_fixtures(self):
        m = parse_json_document(fixture_text("m.json"))
        n = parse_json_document(fixture_text("n.json"))
        assert (m.name, len(m.graph), m.graph.n_edges) == ("M", 16, 20)
        assert (n.name, len(n.graph), n.graph.n_edges) == ("N", 15, 17)


@given(graphs(weighted=True))
def test_edge_list_round_trip(g):
    assert parse_edge_list(emit_edge_list(g)) == g


@given(graphs(weighted=True))
def test_json_round_trip(g):
    assert parse_json_document(emit_json(g)).graph == g


@given(graphs(weighted=True))
def test_emit_is_stable(g):
    for fmt in ("json", "edge_list"):
        once = emit_graph(g, fmt)
        assert emit_graph(parse_graph(once, fmt), fmt) == once


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_graph(Graph(["a"]), "dot")
    with pytest.raises(ValueError):
        parse_graph("a", "dot")


class TestSmallFormats:
    def test_ordering_spec(self):
        spec = parse_ordering_spec("a -> b\n---\n# note\nb -> c\n", directed=True)
        assert spec == [("a", "b"), None, ("b", "c")]

    def test_ordering_spec_wrong_operator(self):
        with pytest.raises(ParseError) as exc:
            parse_ordering_spec("a -- b\n", directed=True)
        assert (exc.value.line, exc.value.column) == (1, 3)

    def test_vertex_order(self):
        assert parse_vertex_order("c\n\n a  # first\nb\n") == ["c", "a", "b"]


class TestConfig:
    def test_defaults(self):
        assert parse_config("") == Config()

    def test_values_are_typed(self):
        cfg = parse_config(
            "row_pitch = 12\nweight_mode = color_ramp\nshow_absent = yes\n"
            "ramp_buckets = a, b, c, d\nmargin_left = 3\nseparator_width = 2\n"
        )
        assert cfg.layout.row_pitch == 12.0
        assert cfg.style.weight_mode == "color_ramp"
        assert cfg.show_absent is True
        assert cfg.style.ramp_buckets == ("a", "b", "c", "d")
        assert cfg.layout.margin("left") == 3.0
        assert cfg.separator_width == 2

    def test_layers_over_base(self):
        base = parse_config("col_pitch = 6")
        cfg = parse_config("row_pitch = 20", base)
        assert (cfg.layout.col_pitch, cfg.layout.row_pitch) == (6.0, 20.0)

    @pytest.mark.parametrize(
        "text, line",
        [("colour = red", 1), ("\nshow_absent = maybe", 2), ("row_pitch", 1), ("row_pitch = 1", None), ("order = random", None)],
    )
    def test_errors(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_config(text)
        assert exc.value.line == line


class TestLayoutExport:
    def test_records(self):
        g = Graph(["a", "b", "c"], [("a", "c")], directed=True)
        lay = compute_layout(g, order_canonical(g, show_absent=True))
        rec = read_layout_export(export_layout(lay))
        assert rec["canvas"] == [{"width": lay.width, "height": lay.height}]
        assert [r["vertex"] for r in rec["latitude"]] == ["a", "b", "c"]
        (lon,) = rec["longitude"]
        assert (lon["source"], lon["target"], lon["marker_y"], lon["loop"]) == ("a", "c", 40.0, False)
        assert [gap["purpose"] for gap in rec["gap"]] == ["absent"] * 5

    def test_escaped_ids(self):
        g = Graph(["a\tb", "c\\d", "e\nf"], [("a\tb", "e\nf")])
        rec = read_layout_export(export_layout(compute_layout(g, order_canonical(g))))
        assert [r["vertex"] for r in rec["latitude"]] == ["a\tb", "c\\d", "e\nf"]
        assert (rec["longitude"][0]["source"], rec["longitude"][0]["target"]) == ("a\tb", "e\nf")

    def test_unknown_record(self):
        with pytest.raises(ParseError):
            read_layout_export("blob\t1\n")

    @given(graph_pairs())
    def test_round_trip_matches_layout(self, pair):
        lay = comparison_layout(compare(*pair, names=("left", "right")))
        rec = read_layout_export(export_layout(lay))
        assert [(r["source"], r["target"]) for r in rec["longitude"]] == [lon.edge for lon in lay.longitudes]
        assert [r["x"] for r in rec["longitude"]] == pytest.approx([lon.x_center for lon in lay.longitudes], abs=5e-4)
        assert [r["ink"] for r in rec["longitude"]] == [lon.ink_class for lon in lay.longitudes]
        assert [(r["vertex"], r["text"]) for r in rec["annotation"]] == [(a.vertex, a.text) for a in lay.annotations]
        assert len(rec["gap"]) == len(lay.gaps)


@given(st.lists(st.from_regex(r"[A-Za-z0-9_.:-]{1,8}", fullmatch=True), unique=True, max_size=20))
def test_vertex_order_round_trip(vs):
    assert parse_vertex_order("".join(v + "\n" for v in vs)) == vs
