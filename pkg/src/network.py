"""
Storage network model: validated RTT matrix, multi-hop reduction,
sorted-RTT profiles and the latency lower bounds derived from them
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import networkx as nx

from .errors import (
    AsymmetricRTT,
    DimensionMismatch,
    DuplicateNodeName,
    FormatError,
    KOutOfRange,
    NegativeRTT,
    NonzeroDiagonal,
    UnknownNode,
)

logger = logging.getLogger(__name__)

NodeRef = Union[int, str]


def parse_rational(value) -> Fraction:
    """Parse an RTT entry given as int, Fraction, decimal string or 'p/q' string"""
    if isinstance(value, bool):
        raise FormatError(f"boolean is not an RTT value: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise FormatError(f"RTT must be finite, got {value!r}")
        # JSON decimals: keep the written digits, not the binary expansion
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"cannot parse RTT value {value!r}") from None
    raise FormatError(f"unsupported RTT value type: {type(value).__name__}")


def format_rational(value: Fraction):
    """Inverse of parse_rational for documents: int when integral, else 'p/q'"""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Network:
    """n nodes and their symmetric RTT matrix (milliseconds, exact)"""

    node_names: Tuple[str, ...]
    rtt: Tuple[Tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.node_names)

    def index(self, node: NodeRef) -> int:
        if isinstance(node, int) and not isinstance(node, bool):
            if 0 <= node < self.n:
                return node
            raise UnknownNode(f"node index {node} out of range 0..{self.n - 1}")
        try:
            return self.node_names.index(node)
        except ValueError:
            raise UnknownNode(f"unknown node: {node!r}") from None

    def name(self, i: int) -> str:
        return self.node_names[i]

    def tau(self, a: NodeRef, b: NodeRef) -> Fraction:
        return self.rtt[self.index(a)][self.index(b)]

    def is_metric(self) -> bool:
        return not triangle_violations(self)


def validate_network(node_names: Sequence[str], matrix: Sequence[Sequence]) -> Network:
    """Check the raw node list and matrix against the network model"""
    names = tuple(str(name) for name in node_names)
    n = len(names)
    if n < 1:
        raise DimensionMismatch("network needs at least one node")
    if len(matrix) != n:
        raise DimensionMismatch(f"{n} node names but {len(matrix)} matrix rows")
    for r, row in enumerate(matrix):
        if len(row) != n:
            raise DimensionMismatch(f"row {r} ({names[r]}) has {len(row)} entries, expected {n}")
    if len(set(names)) != n:
        duplicates = sorted({name for name in names if names.count(name) > 1})
        raise DuplicateNodeName(f"duplicate node names: {', '.join(duplicates)}")

    rtt = [[parse_rational(value) for value in row] for row in matrix]

    for i in range(n):
        if rtt[i][i] != 0:
            raise NonzeroDiagonal(f"RTT from {names[i]} to itself must be 0, got {rtt[i][i]}")
    for i in range(n):
        for j in range(n):
            if rtt[i][j] < 0:
                raise NegativeRTT(f"negative RTT {rtt[i][j]} between {names[i]} and {names[j]}")
    for i in range(n):
        for j in range(i + 1, n):
            if rtt[i][j] != rtt[j][i]:
                raise AsymmetricRTT(names[i], names[j], rtt[i][j], rtt[j][i])

    network = Network(names, tuple(tuple(row) for row in rtt))
    violations = triangle_violations(network)
    if violations:
        i, j, via = violations[0]
        logger.warning(
            f"Network violates the triangle inequality in {len(violations)} place(s), "
            f"e.g. {names[i]}->{names[j]} is longer than via {names[via]}; "
            f"consider reduce_multihop"
        )
    return network


def triangle_violations(network: Network) -> List[Tuple[int, int, int]]:
    """(i, j, via) triples with rtt[i][j] > rtt[i][via] + rtt[via][j], i < j"""
    rtt = network.rtt
    found = []
    for i in range(network.n):
        for j in range(i + 1, network.n):
            for via in range(network.n):
                if via in (i, j):
                    continue
                if rtt[i][j] > rtt[i][via] + rtt[via][j]:
                    found.append((i, j, via))
    return found


def to_graph(network: Network) -> nx.Graph:
    """The complete weighted graph of the network (weights are Fractions)"""
    graph = nx.Graph()
    graph.add_nodes_from(range(network.n))
    for i in range(network.n):
        for j in range(i + 1, network.n):
            graph.add_edge(i, j, weight=network.rtt[i][j])
    return graph


def reduce_multihop(network: Network) -> Network:
    """Replace every RTT by the least total RTT over any path"""
    dist = nx.floyd_warshall(to_graph(network), weight="weight")
    rtt = tuple(
        tuple(Fraction(dist[i][j]) for j in range(network.n))
        for i in range(network.n)
    )
    changed = sum(
        1
        for i in range(network.n)
        for j in range(i + 1, network.n)
        if rtt[i][j] != network.rtt[i][j]
    )
    if changed:
        logger.info(f"Multi-hop reduction shortened {changed} link(s)")
    return Network(network.node_names, rtt)


@dataclass(frozen=True)
class LambdaProfile:
    """Per node, the ascending RTTs from every node (itself included)"""

    node_names: Tuple[str, ...]
    rows: Tuple[Tuple[Fraction, ...], ...]
    # orders[i] lists node indices by (RTT to i, index); orders[i][0] == i
    # unless another node sits at RTT 0 with a smaller index
    orders: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def index(self, node: NodeRef) -> int:
        if isinstance(node, int) and not isinstance(node, bool):
            if 0 <= node < self.n:
                return node
            raise UnknownNode(f"node index {node} out of range 0..{self.n - 1}")
        try:
            return self.node_names.index(node)
        except ValueError:
            raise UnknownNode(f"unknown node: {node!r}") from None


def lambda_profile(network: Network) -> LambdaProfile:
    orders = []
    rows = []
    for i in range(network.n):
        order = sorted(range(network.n), key=lambda t: (network.rtt[t][i], t))
        orders.append(tuple(order))
        rows.append(tuple(network.rtt[t][i] for t in order))
    return LambdaProfile(network.node_names, tuple(rows), tuple(orders))


def check_k(k: int, n: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1 or k > n:
        raise KOutOfRange(k, n)


def worstcase_lower_bound(profile: LambdaProfile, k: int, i: NodeRef) -> Fraction:
    """Per-node worst-case latency bound: the (k-1)-th smallest RTT to i"""
    check_k(k, profile.n)
    return profile.rows[profile.index(i)][k - 1]


def avg_latency_lower_bound(profile: LambdaProfile, k: int) -> Fraction:
    """System average latency bound (1/kn) * sum_i sum_{m<k} lambda_m(i)"""
    check_k(k, profile.n)
    total = sum((sum(row[:k], Fraction(0)) for row in profile.rows), Fraction(0))
    return total / (k * profile.n)
