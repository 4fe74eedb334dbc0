import random

import numpy as np
import pytest
from hypothesis import given, settings

from errors import GraphError, ParseError
from graph_core import (
    Graph,
    Motif,
    add_edge,
    add_pending_vertex,
    build_graph,
    disjoint_union,
    induced_subgraph,
    is_bipartite,
    is_connected,
    make_chain,
    make_complete,
    make_cycle,
    make_empty,
    make_petal,
    make_star,
    parse_graph,
    parse_graph_json,
    pending_vertices,
    random_graph,
    read_graph,
    serialize_graph,
    serialize_graph_json,
    write_graph,
)
from strategies import graphs


def test_build_graph_collapses_duplicate_edges():
    g = build_graph(3, [(0, 1), (1, 0), (0, 1), (1, 2)])
    assert g.edges == [(0, 1), (1, 2)]
    assert g.adjacency == ((1,), (0, 2), (1,))


def test_build_graph_rejects_self_loop_and_bad_ids():
    with pytest.raises(GraphError):
        build_graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        build_graph(3, [(0, 3)])
    with pytest.raises(GraphError):
        build_graph(3, [(-1, 0)])


def test_graph_rejects_asymmetric_adjacency():
    with pytest.raises(GraphError):
        Graph(2, ((1,), ()))


def test_vertex_ids_accept_integer_like_values():
    g = make_chain(3)
    assert g.neighbors(np.int64(1)) == (0, 2)
    assert g.has_edge(np.int64(0), 1)
    with pytest.raises(GraphError, match="not an integer"):
        g.degree(1.0)
    with pytest.raises(GraphError, match="out of range"):
        g.degree(np.int64(3))


def test_degree_and_neighbors():
    g = make_star(4)
    assert g.degree(0) == 4
    assert g.neighbors(0) == (1, 2, 3, 4)
    assert g.degrees() == [4, 1, 1, 1, 1]
    with pytest.raises(GraphError):
        g.degree(5)


def test_generators_sizes():
    assert (make_chain(5).vertex_count, make_chain(5).edge_count) == (5, 4)
    assert (make_cycle(6).vertex_count, make_cycle(6).edge_count) == (6, 6)
    assert make_complete(5).edge_count == 10
    petal = make_petal(3)
    assert (petal.vertex_count, petal.edge_count) == (7, 9)
    assert petal.has_edge(5, 6) and petal.has_edge(0, 6)
    assert make_empty(3).isolated_vertices() == [0, 1, 2]


def test_generator_preconditions():
    with pytest.raises(GraphError):
        make_cycle(2)
    with pytest.raises(GraphError):
        make_petal(0)
    with pytest.raises(GraphError):
        make_chain(0)


def test_connectivity_and_bipartiteness():
    assert is_connected(make_empty(0))
    assert is_connected(make_empty(1))
    assert not is_connected(make_empty(2))
    assert is_bipartite(make_cycle(6))
    assert not is_bipartite(make_cycle(5))
    assert not is_bipartite(make_petal(2))


def test_add_pending_vertex():
    g = add_pending_vertex(make_chain(3), 1)
    assert g.vertex_count == 4
    assert g.neighbors(3) == (1,)
    assert pending_vertices(g) == [(0, 1), (2, 1), (3, 1)]


def test_add_edge_closes_a_chain():
    assert add_edge(make_chain(5), 0, 4) == make_cycle(5)
    with pytest.raises(GraphError):
        add_edge(make_cycle(4), 0, 1)


def test_disjoint_union_shifts_ids():
    g, offset = disjoint_union(make_chain(2), make_cycle(3))
    assert offset == 2
    assert g.edges == [(0, 1), (2, 3), (2, 4), (3, 4)]


def test_induced_subgraph_follows_given_order():
    sub, mapping = induced_subgraph(make_cycle(5), [3, 2, 4])
    assert mapping == {3: 0, 2: 1, 4: 2}
    assert sub.edges == [(0, 1), (0, 2)]


def test_motif_must_be_connected():
    cycle = make_cycle(6)
    assert Motif(cycle, (0, 1, 2)).size == 3
    with pytest.raises(GraphError):
        Motif(cycle, (0, 3))
    with pytest.raises(GraphError):
        Motif(cycle, ())
    with pytest.raises(GraphError):
        Motif(cycle, (1, 1))


def test_parse_graph_with_comments():
    g = parse_graph("# a triangle\n3 3\n0 1\n1 2\n\n0 2\n")
    assert g == make_complete(3)


@pytest.mark.parametrize("text", [
    "",
    "3 2\n0 1\n",
    "3 1\n0 1 2\n",
    "3 1\n0 x\n",
    "3 1\n0 3\n",
    "3 1\n1 1\n",
])
def test_parse_graph_rejects_malformed_text(text):
    with pytest.raises(ParseError):
        parse_graph(text)


def test_serialize_graph_format():
    assert serialize_graph(make_chain(3)) == "3 2\n0 1\n1 2"


@given(graphs(min_vertices=0))
def test_serialized_graph_reparses(g):
    assert parse_graph(serialize_graph(g)) == g
    assert parse_graph_json(serialize_graph_json(g)) == g


def test_parse_graph_json_rejects_garbage():
    with pytest.raises(ParseError):
        parse_graph_json('{"n": 2}')
    with pytest.raises(ParseError):
        parse_graph_json('{"n": 2, "edges": [[0, 0]]}')


@pytest.mark.parametrize("text", [
    '{"n": 3, "edges": [[0, 1.9]]}',
    '{"n": 2.7, "edges": []}',
    '{"n": 3, "edges": [[true, 2]]}',
    '{"n": "3", "edges": []}',
])
def test_parse_graph_json_rejects_non_integer_ids(text):
    with pytest.raises(ParseError):
        parse_graph_json(text)


def test_read_and_write_graph(tmp_path):
    path = tmp_path / "petal.txt"
    write_graph(str(path), make_petal(2))
    assert path.read_text().endswith("\n")
    assert read_graph(str(path)) == make_petal(2)
    json_path = tmp_path / "petal.json"
    write_graph(str(json_path), make_petal(2))
    assert read_graph(str(json_path)) == make_petal(2)
    assert [p.name for p in tmp_path.iterdir() if p.name.startswith(".lapmotif-")] == []


def test_read_missing_graph_is_parse_error(tmp_path):
    with pytest.raises(ParseError):
        read_graph(str(tmp_path / "missing.txt"))


def test_read_undecodable_graph_is_parse_error(tmp_path):
    path = tmp_path / "g.txt"
    path.write_bytes(b"2 1\n0 1\n\xff\xfe\n")
    with pytest.raises(ParseError, match="UTF-8"):
        read_graph(str(path))


@settings(max_examples=25)
@given(graphs())
def test_edges_are_sorted_pairs(g):
    assert all(u < v for u, v in g.edges)
    assert g.edges == sorted(g.edges)
    assert sum(g.degrees()) == 2 * g.edge_count


def test_random_graph_is_reproducible():
    assert random_graph(10, 0.3, random.Random(7)) == random_graph(10, 0.3, random.Random(7))
    assert random_graph(6, 1.0, random.Random(0)) == make_complete(6)
