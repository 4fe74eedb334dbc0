import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from errors import GraphError, ParseError, PreconditionError
from exact_balance import (
    VertexFunction,
    adjacency_kernel,
    adjacency_rank_mod_prime,
    edge_product_sum,
    eigenvalue_one_multiplicity,
    excess,
    excess_vector,
    is_balanced,
    parse_function,
    parse_rational,
    pending_vertex_zeros,
    rank_of_functions,
    serialize_function,
    verify_eigenpair_exact,
)
from graph_core import (
    add_edge, add_pending_vertex, build_graph, make_chain, make_complete, make_cycle, make_empty, make_star,
)
from strategies import graphs, graphs_with_functions


def ints(*values):
    return VertexFunction(tuple(values))


@pytest.mark.parametrize("text, expected", [
    ("3", Fraction(3)),
    ("-2", Fraction(-2)),
    ("3/2", Fraction(3, 2)),
    (" 4 / -6 ", Fraction(-2, 3)),
])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["1.5", "1e3", "a", "1/0", "", "1/2/3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_vertex_function_basics():
    f = VertexFunction.from_mapping(4, {1: 2, 3: Fraction(-1, 2)})
    assert list(f) == [0, 2, 0, Fraction(-1, 2)]
    assert not f.is_integral()
    assert (-f)[1] == -2
    assert f.restricted([3, 1]) == ints(Fraction(-1, 2), 2)
    assert VertexFunction.zeros(3).is_zero()
    with pytest.raises(GraphError):
        VertexFunction.from_mapping(2, {2: 1})


def test_kernel_of_three_chain():
    kernel = adjacency_kernel(make_chain(3))
    assert kernel.multiplicity == 1
    assert kernel.basis[0] == ints(1, 0, -1)


def test_kernel_of_four_cycle():
    kernel = adjacency_kernel(make_cycle(4))
    assert kernel.basis == (ints(1, 0, -1, 0), ints(0, 1, 0, -1))


def test_kernel_of_isolated_vertices():
    kernel = adjacency_kernel(make_empty(2))
    assert kernel.basis == (ints(1, 0), ints(0, 1))


@pytest.mark.parametrize("m", range(1, 22))
def test_chain_multiplicity(m):
    assert eigenvalue_one_multiplicity(make_chain(m)) == (1 if m % 2 == 1 else 0)


@pytest.mark.parametrize("m", range(3, 25))
def test_closed_chain_multiplicity(m):
    assert eigenvalue_one_multiplicity(make_cycle(m)) == (2 if m % 4 == 0 else 0)


def test_pending_vertex_changes_multiplicity():
    assert eigenvalue_one_multiplicity(make_chain(2)) == 0
    assert eigenvalue_one_multiplicity(add_pending_vertex(make_chain(2), 0)) == 1
    assert eigenvalue_one_multiplicity(make_cycle(3)) == 0
    assert eigenvalue_one_multiplicity(add_pending_vertex(make_cycle(3), 0)) == 0
    assert eigenvalue_one_multiplicity(make_cycle(4)) == 2
    assert eigenvalue_one_multiplicity(add_pending_vertex(make_cycle(4), 0)) == 1


@pytest.mark.parametrize("m", range(3, 25))
def test_closing_a_chain(m):
    closed = add_edge(make_chain(m), 0, m - 1)
    assert closed == make_cycle(m)
    before = 1 if m % 2 == 1 else 0
    after = 2 if m % 4 == 0 else 0
    assert (eigenvalue_one_multiplicity(make_chain(m)), eigenvalue_one_multiplicity(closed)) == (before, after)


@pytest.mark.parametrize("n", range(2, 41))
def test_complete_graph_has_no_balanced_function(n):
    assert eigenvalue_one_multiplicity(make_complete(n)) == 0


@pytest.mark.parametrize("k", range(1, 7))
def test_star_multiplicity(k):
    assert eigenvalue_one_multiplicity(make_star(k)) == k - 1


@settings(max_examples=100, deadline=None)
@given(graphs(max_vertices=25))
def test_kernel_basis_is_balanced_integral_and_independent(g):
    kernel = adjacency_kernel(g)
    for u in kernel.basis:
        assert u.is_integral()
        assert not u.is_zero()
        assert is_balanced(g, u)
        first = next(x for x in u if x != 0)
        assert first > 0
    assert rank_of_functions(list(kernel.basis)) == kernel.multiplicity
    assert adjacency_rank_mod_prime(g) == g.vertex_count - kernel.multiplicity


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_pending_vertex_anchors_vanish(g):
    assert pending_vertex_zeros(g, adjacency_kernel(g))


def test_excess_and_balance():
    g = make_star(2)
    f = ints(0, 1, -1)
    assert excess(g, f, 0) == 0
    assert excess_vector(g, f) == [0, 0, 0]
    assert is_balanced(g, f)
    assert not is_balanced(g, ints(1, 1, -1))
    with pytest.raises(PreconditionError):
        excess_vector(g, ints(1, 2))


@settings(max_examples=500, deadline=None)
@given(graphs_with_functions(max_vertices=10))
def test_parity_identity(data):
    g, f = data
    assert sum(value * e for value, e in zip(f, excess_vector(g, f))) == 2 * edge_product_sum(g, f)


def test_single_excess_products_are_even_on_small_graphs():
    pairs = list(itertools.combinations(range(4), 2))
    for mask in range(1 << len(pairs)):
        g = build_graph(4, [pair for bit, pair in enumerate(pairs) if mask >> bit & 1])
        for values in itertools.product((-1, 0, 1, 2), repeat=4):
            f = ints(*values)
            excesses = excess_vector(g, f)
            nonzero = [p for p, e in enumerate(excesses) if e != 0]
            if len(nonzero) == 1:
                p0 = nonzero[0]
                assert values[p0] * excesses[p0] % 2 == 0


def test_parity_identity_on_all_graphs_up_to_six_vertices():
    # one graph per isomorphism class; the identity is invariant under relabeling
    for atlas_graph in nx.graph_atlas_g():
        n = atlas_graph.number_of_nodes()
        if not 1 <= n <= 6:
            continue
        g = build_graph(n, atlas_graph.edges())
        adjacency = nx.to_numpy_array(atlas_graph, nodelist=range(n), dtype=np.int64)
        functions = np.array(list(itertools.product(range(-2, 3), repeat=n)), dtype=np.int64)
        excesses = functions @ adjacency
        products = functions * excesses
        edge_sums = sum((functions[:, q] * functions[:, r] for q, r in g.edges), np.zeros(len(functions), dtype=np.int64))
        assert np.array_equal(products.sum(axis=1), 2 * edge_sums)
        assert np.all((products % 2 != 0).sum(axis=1) % 2 == 0)
        for row in range(0, len(functions), 211):
            f = ints(*(int(x) for x in functions[row]))
            assert excess_vector(g, f) == [int(e) for e in excesses[row]]
            assert edge_product_sum(g, f) == int(edge_sums[row])


@pytest.mark.parametrize("n", range(2, 7))
def test_complete_graph_eigenpair(n):
    f = VertexFunction.from_mapping(n, {0: 1, 1: -1})
    assert verify_eigenpair_exact(make_complete(n), f, Fraction(n, n - 1))
    assert not verify_eigenpair_exact(make_complete(n), f, 1)


def test_eigenpair_check_with_isolated_vertex():
    g = build_graph(4, [(0, 1), (1, 2)])
    assert verify_eigenpair_exact(g, ints(1, 0, -1, 0), 1)
    assert verify_eigenpair_exact(g, ints(0, 0, 0, 5), 1)
    assert not verify_eigenpair_exact(g, ints(1, 0, -1, 5), Fraction(1, 2))
    with pytest.raises(PreconditionError):
        verify_eigenpair_exact(g, VertexFunction.zeros(4), 1)


def test_rank_of_functions():
    assert rank_of_functions([]) == 0
    assert rank_of_functions([ints(1, 0), ints(2, 0)]) == 1
    assert rank_of_functions([ints(1, 0), ints(Fraction(1, 2), 1)]) == 2


def test_parse_function():
    f = parse_function("# values\n0 1\n2 -3/2\n", 4)
    assert f == ints(1, 0, Fraction(-3, 2), 0)
    assert serialize_function(f) == "0 1\n1 0\n2 -3/2\n3 0"
    assert parse_function(serialize_function(f), 4) == f


@pytest.mark.parametrize("text", ["0 1\n0 2\n", "5 1\n", "0\n", "x 1\n", "0 0.5\n"])
def test_parse_function_rejects(text):
    with pytest.raises(ParseError):
        parse_function(text, 3)
