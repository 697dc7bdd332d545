"""
Nearest-neighbor graphs G_{k-1} (one per RTT tie-break choice) and their
undirected extended graphs
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import FormatError
from .network import Network, NodeRef, check_k, format_rational, lambda_profile

logger = logging.getLogger(__name__)

DEFAULT_VARIANT_CAP = 64


@dataclass(frozen=True)
class NearestNeighborGraph:
    """Directed graph where node i has in-edges from k-1 lowest-RTT nodes"""

    network: Network
    k: int
    in_neighbors: Tuple[FrozenSet[int], ...]

    @property
    def n(self) -> int:
        return self.network.n

    def weight(self, src: int, dst: int) -> Fraction:
        return self.network.rtt[src][dst]

    def edges(self) -> List[Tuple[int, int]]:
        """(src, dst) pairs sorted by destination then source"""
        return [(src, dst) for dst in range(self.n) for src in sorted(self.in_neighbors[dst])]

    def to_digraph(self) -> nx.DiGraph:
        digraph = nx.DiGraph(k=self.k)
        for i, name in enumerate(self.network.node_names):
            digraph.add_node(i, name=name)
        for src, dst in self.edges():
            digraph.add_edge(src, dst, weight=self.weight(src, dst))
        return digraph


@dataclass(frozen=True)
class GraphVariants:
    """All G_{k-1} variants from tie-break choices, possibly truncated at the cap"""

    graphs: Tuple[NearestNeighborGraph, ...]
    total: int
    truncated: bool

    def __iter__(self) -> Iterator[NearestNeighborGraph]:
        return iter(self.graphs)

    def __len__(self) -> int:
        return len(self.graphs)

    def __getitem__(self, index: int) -> NearestNeighborGraph:
        return self.graphs[index]


def _neighbor_choices(network: Network, k: int) -> List[List[FrozenSet[int]]]:
    """Per node, every admissible in-neighbor set in lexicographic order"""
    profile = lambda_profile(network)
    choices = []
    for i in range(network.n):
        if k == 1:
            choices.append([frozenset()])
            continue
        threshold = profile.rows[i][k - 1]
        column = [network.rtt[t][i] for t in range(network.n)]
        strict = [t for t in range(network.n) if t != i and column[t] < threshold]
        tied = [t for t in range(network.n) if t != i and column[t] == threshold]
        slots = k - 1 - len(strict)
        choices.append([frozenset(strict).union(pick) for pick in itertools.combinations(tied, slots)])
    return choices


def count_nn_graphs(network: Network, k: int) -> int:
    check_k(k, network.n)
    return math.prod(len(options) for options in _neighbor_choices(network, k))


def build_nn_graphs(network: Network, k: int, cap: int = DEFAULT_VARIANT_CAP) -> GraphVariants:
    """Enumerate G_{k-1} variants: nodes in index order, tie subsets lexicographic"""
    check_k(k, network.n)
    if cap < 1:
        raise ValueError(f"variant cap must be >= 1, got {cap}")

    choices = _neighbor_choices(network, k)
    total = math.prod(len(options) for options in choices)
    combos = itertools.islice(itertools.product(*choices), cap)
    graphs = tuple(NearestNeighborGraph(network, k, tuple(combo)) for combo in combos)
    truncated = total > cap
    if truncated:
        logger.warning(f"{total} nearest-neighbor graph variants for k={k}, keeping the first {cap}")
    else:
        logger.debug(f"{total} nearest-neighbor graph variant(s) for k={k}")
    return GraphVariants(graphs, total, truncated)


def graph_from_edges(network: Network, k: int, edges: Iterable[Tuple[NodeRef, NodeRef]]) -> NearestNeighborGraph:
    """Rebuild a G_{k-1} variant from (src, dst) pairs, e.g. a saved plan's edge list"""
    check_k(k, network.n)
    sources: List[set] = [set() for _ in range(network.n)]
    for src, dst in edges:
        sources[network.index(dst)].add(network.index(src))
    in_neighbors = tuple(frozenset(s) for s in sources)
    for i, options in enumerate(_neighbor_choices(network, k)):
        if in_neighbors[i] not in options:
            names = sorted(network.name(t) for t in in_neighbors[i])
            raise FormatError(f"in-neighbors {names} of {network.name(i)} are not a G_{k - 1} choice")
    return NearestNeighborGraph(network, k, in_neighbors)


@dataclass(frozen=True)
class ExtendedGraph:
    """Undirected graph over the same node set; adjacency[i] excludes i"""

    node_names: Tuple[str, ...]
    adjacency: Tuple[FrozenSet[int], ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Tuple[int, int]], node_names: Optional[Sequence[str]] = None
    ) -> "ExtendedGraph":
        adjacency: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                continue
            adjacency[u].add(v)
            adjacency[v].add(u)
        names = tuple(node_names) if node_names is not None else tuple(str(i) for i in range(n))
        return cls(names, tuple(frozenset(a) for a in adjacency))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    @property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        for i, name in enumerate(self.node_names):
            graph.add_node(i, name=name)
        graph.add_edges_from(self.edges())
        return graph


def extend(g: NearestNeighborGraph) -> ExtendedGraph:
    edges = set()
    for dst, sources in enumerate(g.in_neighbors):
        for src in sources:
            edges.add((min(src, dst), max(src, dst)))
        for a, b in itertools.combinations(sorted(sources), 2):
            edges.add((a, b))
    return ExtendedGraph.from_edges(g.n, sorted(edges), g.network.node_names)


def receive_set(g: NearestNeighborGraph, t: NodeRef) -> FrozenSet[int]:
    """Nodes that have t among their in-neighbors"""
    t = g.network.index(t)
    return frozenset(j for j in range(g.n) if t in g.in_neighbors[j])


def edge_list_text(g: NearestNeighborGraph) -> str:
    """Line-oriented dump: one 'src -> dst weight_ms' line per directed edge"""
    names = g.network.node_names
    return "\n".join(
        f"{names[src]} -> {names[dst]} {format_rational(g.weight(src, dst))}"
        for src, dst in g.edges()
    )


def graph_document(g: NearestNeighborGraph) -> Dict:
    """Node-link document of G_{k-1} and its extended graph for visualization tools"""
    directed = g.to_digraph()
    for _, _, data in directed.edges(data=True):
        data["weight"] = format_rational(data["weight"])
    return {
        "format": 1,
        "k": g.k,
        "nearest_neighbor_graph": nx.node_link_data(directed),
        "extended_graph": nx.node_link_data(extend(g).graph),
    }
