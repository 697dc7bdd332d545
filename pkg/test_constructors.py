"""
Uncoded placements, binary XOR codes and the MDS baseline
"""

import random
from fractions import Fraction

import galois
import pytest

from conftest import AWS_TABLE, C, I, L, M, O, S, all_equal
from src.coloring import Coloring, k_colorable
from src.constructors import (
    binary_code_from_coloring,
    canonical_mapping,
    enumerate_binary_codes,
    plan_binary_code,
    scalar_mds_scheme,
    uncoded_from_coloring,
)
from src.errors import FieldTooSmall, KOutOfRange, NotAProperColoring, WrongColorCount
from src.latency import evaluate
from src.nngraph import build_nn_graphs, extend
from src.oracle import random_network
from src.schemes import FieldSpec


@pytest.fixture
def aws_graph(aws):
    return build_nn_graphs(aws, 4)[0]


@pytest.fixture
def aws_coloring(aws_graph):
    return k_colorable(extend(aws_graph), 5)


def test_aws_code_with_table_labels(aws, aws_graph, aws_coloring):
    colors = aws_coloring.colors
    mapping = {colors[M]: 1, colors[I]: 2, colors[L]: 3, colors[O]: 4}
    scheme = binary_code_from_coloring(aws_graph, aws_coloring, colors[S], mapping)
    assert scheme.formula(S) == "W1+W2+W4"
    assert scheme.formula(C) == "W3"
    report = evaluate(aws, scheme, graph=aws_graph)
    for i, name in enumerate(aws.node_names):
        assert report.latencies[i] == AWS_TABLE[name]
    assert report.average == Fraction(1960, 24)
    assert report.admissible
    assert all(report.worstcase_optimal)
    assert not report.average_optimal


def test_aws_best_code_codes_seoul(aws_graph, aws_coloring):
    codes = enumerate_binary_codes(aws_graph, aws_coloring)
    assert len(codes) == 5
    best = codes[0]
    assert best.report.average == Fraction(1960, 24)
    assert best.plan.coded_nodes() == (S,)
    files = {i: best.plan.stored_files(i) for i in range(6)}
    assert files[S] == files[M] | files[I] | files[O]
    assert [code.report.average for code in codes] == sorted(code.report.average for code in codes)


def test_aws_receive_set_and_missing_files(aws_graph, aws_coloring):
    plan = plan_binary_code(aws_graph, aws_coloring, aws_coloring.colors[S])
    assert plan.receive_sets[S] == {M, C, O}
    file_of = {i: next(iter(plan.stored_files(i))) for i in (M, I, L, O)}
    # Seoul misses the file of Ireland, the one node outside its neighborhood
    assert plan.missing[S][S] == file_of[I]


def test_canonical_mapping():
    assert canonical_mapping(5, 2) == {0: 1, 1: 2, 3: 3, 4: 4}


def test_example1_xor_code(example1):
    g = build_nn_graphs(example1, 3)[0]
    coloring = k_colorable(extend(g), 4)
    assert k_colorable(extend(g), 3) is None
    code = binary_code_from_coloring(g, coloring, coloring.colors[3])
    assert code.formula(3) == "W1+W2+W3"
    assert evaluate(example1, code).average == Fraction(9, 12)


def test_example2_uncoded_placement(example2):
    g = build_nn_graphs(example2, 3)[0]
    coloring = k_colorable(extend(g), 3)
    scheme = uncoded_from_coloring(g, coloring)
    assert scheme.assignment[0] == scheme.assignment[2]
    assert len(set(scheme.assignment)) == 3
    report = evaluate(example2, scheme, graph=g)
    assert report.average_optimal and all(report.worstcase_optimal) and report.admissible


def test_rainbow_placement():
    network = all_equal(5)
    g = build_nn_graphs(network, 5)[0]
    scheme = uncoded_from_coloring(g, k_colorable(extend(g), 5))
    assert sorted(scheme.assignment) == [1, 2, 3, 4, 5]


def test_coloring_checks(aws_graph, aws_coloring):
    with pytest.raises(WrongColorCount):
        uncoded_from_coloring(aws_graph, aws_coloring)
    improper = Coloring((0, 0, 1, 2, 3, 4), 5)
    with pytest.raises(NotAProperColoring):
        plan_binary_code(aws_graph, improper, 0)
    with pytest.raises(WrongColorCount):
        plan_binary_code(aws_graph, aws_coloring, 5)
    with pytest.raises(WrongColorCount):
        plan_binary_code(aws_graph, aws_coloring, 0, {1: 1, 2: 1, 3: 2, 4: 3})


def test_binary_code_needs_two_files(aws):
    g = build_nn_graphs(aws, 1)[0]
    with pytest.raises(KOutOfRange):
        plan_binary_code(g, Coloring((0, 1, 0, 1, 0, 1), 2), 0)


def test_mds_field_size(aws):
    with pytest.raises(FieldTooSmall):
        scalar_mds_scheme(aws, 4, FieldSpec(5))
    scheme = scalar_mds_scheme(aws, 4, FieldSpec(7))
    g = build_nn_graphs(aws, 4)[0]
    report = evaluate(aws, scheme, graph=g)
    assert report.admissible
    assert all(report.worstcase_optimal)


@pytest.mark.parametrize("seed", range(200))
def test_constructions_meet_worst_case_bounds(seed):
    rng = random.Random(seed)
    network = random_network(seed, rng.randint(2, 6), tie_bias=(0.0, 0.3, 1.0)[seed % 3])
    k = rng.randint(2, network.n)
    g = build_nn_graphs(network, k)[0]
    h = extend(g)

    coloring = k_colorable(h, k)
    if coloring is not None:
        report = evaluate(network, uncoded_from_coloring(g, coloring), graph=g)
        assert report.admissible and all(report.worstcase_optimal) and report.average_optimal
    else:
        coloring = k_colorable(h, k + 1)
        if coloring is not None:
            for code in enumerate_binary_codes(g, coloring):
                assert code.report.admissible
                assert all(code.report.worstcase_optimal)

    field = FieldSpec(int(galois.next_prime(network.n)))
    report = evaluate(network, scalar_mds_scheme(network, k, field), graph=g)
    assert report.admissible and all(report.worstcase_optimal)
