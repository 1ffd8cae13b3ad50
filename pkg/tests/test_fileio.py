import pytest

from diskfvs import InputError, decompose_unweighted, random_udg
from diskfvs.fileio import (
    parse_decomposition,
    parse_graph,
    parse_objects,
    serialize_decomposition,
    serialize_graph,
    serialize_objects,
)
from diskfvs.geometry import build_intersection_graph

from conftest import cycle_graph


class TestGraphFormat:
    def test_round_trip_byte_identical(self):
        g = cycle_graph(5)
        text = serialize_graph(g)
        assert text == serialize_graph(parse_graph(text))

    def test_comments_ignored(self):
        text = "c a comment\np fvs 2 1\nc another\ne 0 1\n"
        g = parse_graph(text)
        assert g.n == 2 and g.m == 1

    def test_exact_format(self):
        g = cycle_graph(3)
        assert serialize_graph(g) == "p fvs 3 3\ne 0 1\ne 0 2\ne 1 2\n"

    def test_bad_headers(self):
        with pytest.raises(InputError):
            parse_graph("e 0 1\n")
        with pytest.raises(InputError):
            parse_graph("p fvs 2 2\ne 0 1\n")  # wrong edge count
        with pytest.raises(InputError):
            parse_graph("p fvs 2 1\nx 0 1\n")


class TestObjectsFormat:
    def test_round_trip_byte_identical(self):
        objs = random_udg(25, 0.2, 11)
        text = serialize_objects(objs)
        assert text == serialize_objects(parse_objects(text))
        assert parse_objects(text) == objs

    def test_graph_from_parsed_objects_matches(self):
        objs = random_udg(30, 0.4, 5)
        text = serialize_objects(objs)
        g1 = build_intersection_graph(objs)
        g2 = build_intersection_graph(parse_objects(text))
        assert g1.adj == g2.adj

    def test_bad_object_line(self):
        with pytest.raises(InputError):
            parse_objects("p objects 1 1.0 1.0\no disk 0 0\n")

    def test_count_mismatch(self):
        with pytest.raises(InputError):
            parse_objects("p objects 2 1.0 1.0\no disk 0.0 0.0 0.5 0.5\n")


class TestDecompositionFormat:
    def test_round_trip_byte_identical(self):
        g = cycle_graph(7)
        td = decompose_unweighted(g)
        text = serialize_decomposition(td, g.n)
        td2, n2 = parse_decomposition(text)
        assert n2 == g.n
        assert text == serialize_decomposition(td2, n2)
        assert td2.bags == td.bags

    def test_header_shape(self):
        g = cycle_graph(4)
        td = decompose_unweighted(g)
        first = serialize_decomposition(td, g.n).splitlines()[0]
        parts = first.split()
        assert parts[:2] == ["s", "td"]
        assert int(parts[2]) == td.node_count()
        assert int(parts[4]) == g.n

    def test_bad_bag_ids(self):
        with pytest.raises(InputError):
            parse_decomposition("s td 2 1 2\nb 1 0\nb 3 1\n1 2\n")
