"""
Nearest-neighbor graphs, tie variants and extended graphs
"""

import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import C, I, L, M, O, S, all_equal, tied_detour
from src.errors import FormatError, KOutOfRange
from src.network import lambda_profile
from src.nngraph import (
    build_nn_graphs,
    count_nn_graphs,
    edge_list_text,
    extend,
    graph_document,
    graph_from_edges,
    receive_set,
)
from src.oracle import random_network


def test_aws_unique_graph(aws):
    variants = build_nn_graphs(aws, 4)
    assert len(variants) == 1
    assert variants.total == 1 and not variants.truncated
    g = variants[0]
    assert g.in_neighbors[S] == {M, O, C}
    assert g.in_neighbors[M] == {L, S, I}
    assert g.in_neighbors[I] == {L, M, O}
    assert g.in_neighbors[L] == {I, M, O}
    assert g.in_neighbors[C] == {O, S, I}
    assert g.in_neighbors[O] == {C, S, I}


def test_aws_extended_graph_has_five_clique(aws):
    h = extend(build_nn_graphs(aws, 4)[0])
    for u, v in itertools.combinations([S, L, I, M, O], 2):
        assert h.has_edge(u, v)
    # everything except London-California
    assert len(h.edges()) == 14
    assert not h.has_edge(L, C)


def test_receive_set(aws):
    g = build_nn_graphs(aws, 4)[0]
    assert receive_set(g, "Seoul") == {M, C, O}


def test_edge_list_text(aws):
    text = edge_list_text(build_nn_graphs(aws, 4)[0])
    lines = text.splitlines()
    assert len(lines) == 18
    assert "Mumbai -> Seoul 120" in lines
    assert "Oregon -> California 22" in lines


def test_graph_document_is_json(aws):
    document = graph_document(build_nn_graphs(aws, 4)[0])
    assert document["format"] == 1
    assert len(document["extended_graph"]["nodes"]) == 6
    json.dumps(document)


def test_k_one_has_no_edges(aws):
    g = build_nn_graphs(aws, 1)[0]
    assert all(not sources for sources in g.in_neighbors)
    assert extend(g).edges() == []


def test_k_out_of_range(aws):
    with pytest.raises(KOutOfRange):
        build_nn_graphs(aws, 7)


def test_ties_are_enumerated_and_capped():
    network = all_equal(4)
    assert count_nn_graphs(network, 2) == 3**4
    variants = build_nn_graphs(network, 2, cap=64)
    assert len(variants) == 64
    assert variants.total == 81
    assert variants.truncated
    assert len({g.in_neighbors for g in variants}) == 64


def test_tie_order_is_lexicographic():
    first = build_nn_graphs(all_equal(4), 3)[0]
    assert first.in_neighbors[0] == {1, 2}
    assert first.in_neighbors[3] == {0, 1}


@pytest.mark.parametrize("seed", range(100))
def test_distinct_rtts_give_one_variant(seed):
    network = random_network(seed, 2 + seed % 6, tie_bias=0.0)
    for k in range(1, network.n + 1):
        assert len(build_nn_graphs(network, k)) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6), st.sampled_from([0.3, 1.0]), st.data())
def test_graph_invariants(seed, n, bias, data):
    network = random_network(seed, n, tie_bias=bias)
    k = data.draw(st.integers(1, n))
    profile = lambda_profile(network)
    for g in build_nn_graphs(network, k, cap=16):
        h = extend(g)
        for i in range(n):
            sources = g.in_neighbors[i]
            threshold = profile.rows[i][k - 1]
            assert len(sources) == k - 1 and i not in sources
            assert all(network.rtt[j][i] <= threshold for j in sources)
            assert all(network.rtt[j][i] >= threshold for j in set(range(n)) - sources - {i})
            # node plus its in-neighbors is a clique of the extended graph
            for u, v in itertools.combinations(sources | {i}, 2):
                assert h.has_edge(u, v)


def test_tied_detour_variants():
    network = tied_detour()
    variants = build_nn_graphs(network, 3)
    assert variants.total == 2
    assert variants[0].in_neighbors[2] == {0, 1}
    assert variants[1].in_neighbors[2] == {1, 3}
    assert extend(variants[0]).has_edge(0, 1)
    assert not extend(variants[1]).has_edge(0, 1)


def test_graph_from_edges_restores_variant():
    network = tied_detour()
    g = build_nn_graphs(network, 3)[1]
    named = [(network.name(src), network.name(dst)) for src, dst in g.edges()]
    assert graph_from_edges(network, 3, named) == g
    assert graph_from_edges(network, 3, g.edges()) == g


def test_graph_from_edges_rejects_non_nearest_choice():
    network = tied_detour()
    edges = [(src, dst) for src, dst in build_nn_graphs(network, 3)[0].edges() if dst != 2]
    with pytest.raises(FormatError):
        graph_from_edges(network, 3, edges + [("B", "C")])
