"""
Exact decode latencies, admissibility and decoding plans
"""

import random
from fractions import Fraction

import pytest

from conftest import I, L, M, O, S
from src.coloring import k_colorable
from src.constructors import binary_code_from_coloring
from src.errors import RankDeficient
from src.latency import decode_latency, decoding_plan_text, evaluate, is_admissible_on, short_labels
from src.network import avg_latency_lower_bound, lambda_profile, validate_network
from src.nngraph import build_nn_graphs, extend
from src.oracle import random_network
from src.schemes import FieldSpec, LinearScheme, UncodedScheme, solve_decode, uncoded_as_linear


@pytest.fixture
def aws_code(aws):
    g = build_nn_graphs(aws, 4)[0]
    coloring = k_colorable(extend(g), 5)
    colors = coloring.colors
    mapping = {colors[M]: 1, colors[I]: 2, colors[L]: 3, colors[O]: 4}
    return binary_code_from_coloring(g, coloring, colors[S], mapping)


def test_seoul_decodes_w2_from_three_nodes(aws, aws_code):
    latency, entry = decode_latency(aws, aws_code, "Seoul", 2)
    assert latency == 126
    labels = short_labels(aws.node_names)
    assert labels == ("S", "M", "I", "L", "C", "O")
    assert decoding_plan_text(entry, labels) == "W2 = X_S + X_M + X_O"


def test_mumbai_waits_for_ireland(aws, aws_code):
    latency, entry = decode_latency(aws, aws_code, "Mumbai", 4)
    assert latency == 121
    assert all(aws.rtt[t][M] <= latency for t in entry.helpers)


def test_ternary_plan_text():
    network = validate_network(["A", "B"], [[0, 1], [1, 0]])
    scheme = LinearScheme.from_columns(FieldSpec(3), [[1, 1], [0, 1]])
    latency, entry = decode_latency(network, scheme, "A", 1)
    assert latency == 1
    assert decoding_plan_text(entry, short_labels(network.node_names)) == "W1 = X_A + 2*X_B"


def test_uncoded_two_nodes(tau):
    network = validate_network(["A", "B"], [[0, tau], [tau, 0]])
    report = evaluate(network, UncodedScheme((1, 2), 2))
    assert report.latencies == ((0, tau), (tau, 0))
    assert report.average == tau / 2 == report.average_bound
    assert report.worstcase_optimal == (True, True)


def test_uncoded_and_linear_views_agree(aws):
    scheme = UncodedScheme((1, 2, 3, 4, 3, 1), 4)
    linear = uncoded_as_linear(scheme, FieldSpec(2), 4)
    assert evaluate(aws, scheme).latencies == evaluate(aws, linear).latencies


def test_missing_file_is_rank_deficient(aws):
    with pytest.raises(RankDeficient):
        evaluate(aws, UncodedScheme((1, 1, 1, 1, 1, 1), 2))


def test_example1_uncoded_is_not_admissible(example1):
    g = build_nn_graphs(example1, 3)[0]
    result = is_admissible_on(example1, UncodedScheme((1, 2, 3, 1), 3), g)
    assert not result
    assert (3, 2) in result.failures


def test_short_labels_grow_until_unique():
    assert short_labels(["Seoul", "Sydney", "Oregon"]) == ("Se", "Sy", "Or")


def random_linear_schemes(seed, p, count):
    """(rng, network, scheme) triples with full-rank random generators over GF(p)"""
    rng = random.Random(seed)
    field = FieldSpec(p)
    produced = 0
    while produced < count:
        network = random_network(rng.randrange(2**32), rng.randint(1, 6), tie_bias=rng.choice([0.0, 0.3, 1.0]))
        k = rng.randint(1, network.n)
        generator = [[rng.randrange(p) for _ in range(network.n)] for _ in range(k)]
        try:
            scheme = LinearScheme.create(field, generator)
        except RankDeficient:
            continue
        produced += 1
        yield rng, network, scheme


@pytest.mark.parametrize("p", [2, 3, 7])
def test_plans_reproduce_file_symbols(p):
    for rng, network, scheme in random_linear_schemes(1000 + p, p, 34):
        k = scheme.k
        report = evaluate(network, scheme)
        i = rng.randrange(network.n)
        j = rng.randint(1, k)
        entry = report.plan[(i, j)]
        assert entry.latency == report.latencies[i][j - 1]
        assert all(network.rtt[t][i] <= entry.latency for t in entry.helpers)
        for _ in range(3):
            messages = [rng.randrange(p) for _ in range(k)]
            stored = scheme.encode(messages)
            recovered = sum(c * stored[t] for t, c in zip(entry.helpers, entry.coefficients)) % p
            assert recovered == messages[j - 1]


@pytest.mark.parametrize("seed", range(30))
def test_latencies_respect_worst_case_bound(seed):
    rng = random.Random(seed)
    network = random_network(seed, rng.randint(2, 5), tie_bias=0.3)
    k = rng.randint(1, network.n)
    assignment = [rng.randint(1, k) for _ in range(network.n)]
    assignment[:k] = range(1, k + 1)
    report = evaluate(network, UncodedScheme(tuple(assignment), k))
    profile = lambda_profile(network)
    for i in range(network.n):
        assert report.worst_case[i] >= profile.rows[i][k - 1]
    assert report.average >= report.average_bound


@pytest.mark.parametrize("p", [2, 3, 7])
def test_extra_columns_never_raise_decode_latency(p):
    for rng, network, scheme in random_linear_schemes(2000 + p, p, 30):
        report = evaluate(network, scheme)
        i = rng.randrange(network.n)
        j = rng.randint(1, scheme.k)
        entry = report.plan[(i, j)]
        # nothing strictly closer than the reported latency can decode W_j
        closer = [t for t in range(network.n) if network.rtt[t][i] < entry.latency]
        assert solve_decode(scheme.columns(closer), j, scheme.field) is None
        for extra in range(network.n):
            helpers = list(entry.helpers) + [extra]
            assert solve_decode(scheme.columns(helpers), j, scheme.field) is not None
            within = [t for t in range(network.n) if network.rtt[t][i] <= max(entry.latency, network.rtt[extra][i])]
            assert solve_decode(scheme.columns(within), j, scheme.field) is not None


@pytest.mark.parametrize("p", [2, 3, 7])
def test_shorter_rtts_never_raise_latencies(p):
    for rng, network, scheme in random_linear_schemes(2500 + p, p, 20):
        if network.n < 2:
            continue
        a, b = rng.sample(range(network.n), 2)
        matrix = [list(row) for row in network.rtt]
        matrix[a][b] = matrix[b][a] = matrix[a][b] * Fraction(rng.randint(1, 9), 10)
        faster = validate_network(network.node_names, matrix)
        before = evaluate(network, scheme).latencies
        after = evaluate(faster, scheme).latencies
        for i in range(network.n):
            assert all(new <= old for new, old in zip(after[i], before[i]))


@pytest.mark.parametrize("p", [2, 3, 7])
def test_linear_schemes_respect_lower_bounds(p):
    for _, network, scheme in random_linear_schemes(3000 + p, p, 40):
        report = evaluate(network, scheme)
        profile = lambda_profile(network)
        for i in range(network.n):
            assert report.worst_case[i] >= profile.rows[i][scheme.k - 1]
        assert report.average_bound == avg_latency_lower_bound(profile, scheme.k)
        assert report.average >= report.average_bound
