"""
Shared fixtures for the rtt-planner test suite
"""

import itertools
import json
from fractions import Fraction
from pathlib import Path

import pytest

from src.loaders import load_network, network_to_json
from src.network import validate_network

FIXTURES = Path(__file__).parent / "fixtures"

# AWS node order in fixtures/aws6.json
S, M, I, L, C, O = range(6)

# Decode latencies per node for W1..W4 with Mumbai=W1, Ireland=W2,
# London/California=W3, Oregon=W4 and the XOR code at Seoul
AWS_TABLE = {
    "Seoul": (120, 126, 138, 126),
    "Mumbai": (0, 121, 113, 121),
    "Ireland": (121, 0, 13, 126),
    "London": (113, 13, 0, 137),
    "California": (138, 138, 0, 22),
    "Oregon": (126, 126, 22, 0),
}


def all_equal(n: int, value=10):
    matrix = [[0 if i == j else value for j in range(n)] for i in range(n)]
    return validate_network([f"N{i}" for i in range(n)], matrix)


def clique_forcing(big=100):
    """Five hubs plus one spoke per hub pair; for k=3 the extended graph holds a 5-clique"""
    hubs = 5
    pairs = list(itertools.combinations(range(hubs), 2))
    n = hubs + len(pairs)
    matrix = [[0 if i == j else big for j in range(n)] for i in range(n)]
    for q, (a, b) in enumerate(pairs):
        t = hubs + q
        matrix[t][a] = matrix[a][t] = 1 + 2 * q
        matrix[t][b] = matrix[b][t] = 2 + 2 * q
    names = [f"H{a}" for a in range(hubs)] + [f"T{a}{b}" for a, b in pairs]
    return validate_network(names, matrix)


def tied_detour():
    """Four nodes where C is tied between A and D; only the second G_2 variant is 3-colorable"""
    matrix = [
        [0, 5, 2, 4],
        [5, 0, 1, 1],
        [2, 1, 0, 2],
        [4, 1, 2, 0],
    ]
    return validate_network(["A", "B", "C", "D"], matrix)


@pytest.fixture
def aws():
    return load_network(FIXTURES / "aws6.json")


@pytest.fixture
def example1():
    return load_network(FIXTURES / "example1-like.json")


@pytest.fixture
def example2():
    return load_network(FIXTURES / "example2-like.json")


@pytest.fixture
def aws_path():
    return FIXTURES / "aws6.json"


@pytest.fixture
def tau():
    return Fraction(7, 2)


@pytest.fixture
def tied_path(tmp_path):
    path = tmp_path / "tied.json"
    path.write_text(json.dumps(network_to_json(tied_detour())), encoding="utf-8")
    return path
