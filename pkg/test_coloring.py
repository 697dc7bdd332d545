"""
Exact coloring of extended graphs
"""

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import C, I, L, M, O, S
from src.coloring import chromatic_number, is_proper, k_colorable, max_clique_lower_bound
from src.errors import TimeBudgetExceeded
from src.nngraph import ExtendedGraph, build_nn_graphs, extend


def graph_from(nx_graph):
    return ExtendedGraph.from_edges(nx_graph.number_of_nodes(), nx_graph.edges())


def brute_chromatic(h):
    for count in range(1, h.n + 1):
        for colors in itertools.product(range(count), repeat=h.n):
            if is_proper(h, colors):
                return count
    return h.n


def test_aws_needs_five_colors(aws):
    h = extend(build_nn_graphs(aws, 4)[0])
    assert k_colorable(h, 4) is None
    coloring = k_colorable(h, 5)
    assert coloring is not None
    assert is_proper(h, coloring.colors)
    assert coloring.colors[C] == coloring.colors[L]
    assert len(set(coloring.colors)) == 5
    assert chromatic_number(h)[0] == 5
    clique = max_clique_lower_bound(h)
    assert len(clique) >= 5
    assert all(h.has_edge(u, v) for u, v in itertools.combinations(clique, 2))
    assert all(h.has_edge(u, v) for u, v in itertools.combinations((S, M, I, L, O), 2))


@pytest.mark.parametrize(
    "nx_graph, expected",
    [
        (nx.empty_graph(4), 1),
        (nx.complete_graph(5), 5),
        (nx.cycle_graph(5), 3),
        (nx.cycle_graph(6), 2),
        (nx.petersen_graph(), 3),
    ],
)
def test_known_chromatic_numbers(nx_graph, expected):
    count, coloring = chromatic_number(graph_from(nx_graph))
    assert count == expected
    assert is_proper(graph_from(nx_graph), coloring.colors)


def test_budget_is_enforced():
    with pytest.raises(TimeBudgetExceeded):
        k_colorable(graph_from(nx.petersen_graph()), 3, budget=1)


def test_is_proper_rejects_conflicts():
    h = graph_from(nx.path_graph(3))
    assert is_proper(h, [0, 1, 0])
    assert not is_proper(h, [0, 0, 1])
    assert not is_proper(h, [0, 1])


def test_color_budget_must_be_positive():
    with pytest.raises(ValueError):
        k_colorable(graph_from(nx.path_graph(2)), 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
))
def test_matches_brute_force(case):
    n, edges = case
    h = ExtendedGraph.from_edges(n, edges)
    count, coloring = chromatic_number(h)
    assert count == brute_chromatic(h)
    assert is_proper(h, coloring.colors)
    if count > 1:
        assert k_colorable(h, count - 1) is None
    assert len(max_clique_lower_bound(h)) <= count
