"""
Exact latency evaluation of storage schemes

A node i waiting L ms can read every node t with rtt(t, i) <= L. The decode
latency of file j at i is the smallest such L for which the stored symbols in
reach span W_j; fetches run in parallel, so a plan costs its slowest helper.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InternalAssertionFailure, RankDeficient
from .network import (
    LambdaProfile,
    Network,
    NodeRef,
    avg_latency_lower_bound,
    lambda_profile,
)
from .nngraph import NearestNeighborGraph
from .schemes import AnyScheme, FieldSpec, LinearScheme, UncodedScheme, solve_decode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlanEntry:
    """How node i recovers file j: sum of coefficient * X_helper"""

    node: int
    file: int
    helpers: Tuple[int, ...]
    coefficients: Tuple[int, ...]
    latency: Fraction


@dataclass(frozen=True)
class DecodingPlan:
    field: FieldSpec
    entries: Dict[Tuple[int, int], PlanEntry]

    def __getitem__(self, key: Tuple[int, int]) -> PlanEntry:
        return self.entries[key]


@dataclass(frozen=True)
class LatencyReport:
    node_names: Tuple[str, ...]
    k: int
    # latencies[i][j - 1] is the decode latency of W_j at node i
    latencies: Tuple[Tuple[Fraction, ...], ...]
    worst_case: Tuple[Fraction, ...]
    average: Fraction
    worstcase_bounds: Tuple[Fraction, ...]
    average_bound: Fraction
    worstcase_optimal: Tuple[bool, ...]
    average_optimal: bool
    admissible: Optional[bool] = None
    admissibility_failures: Tuple[Tuple[int, int], ...] = ()
    plan: Optional[DecodingPlan] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.node_names)


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    # (node, file) pairs that cannot decode from the node and its in-neighbors
    failures: Tuple[Tuple[int, int], ...]

    def __bool__(self) -> bool:
        return self.admissible


def _prefixes(profile: LambdaProfile, i: int):
    """(threshold, nodes within threshold) for each distinct RTT to i, ascending"""
    row = profile.rows[i]
    order = profile.orders[i]
    for end in range(1, len(row) + 1):
        if end < len(row) and row[end] == row[end - 1]:
            continue
        yield row[end - 1], order[:end]


def decode_latency(
    network: Network,
    scheme: LinearScheme,
    i: NodeRef,
    j: int,
    profile: Optional[LambdaProfile] = None,
) -> Tuple[Fraction, PlanEntry]:
    i = network.index(i)
    if not 1 <= j <= scheme.k:
        raise ValueError(f"file index {j} outside 1..{scheme.k}")
    profile = profile or lambda_profile(network)
    for threshold, nodes in _prefixes(profile, i):
        solution = solve_decode(scheme.columns(nodes), j, scheme.field)
        if solution is None:
            continue
        used = [(t, c) for t, c in zip(nodes, solution) if c]
        entry = PlanEntry(
            node=i,
            file=j,
            helpers=tuple(t for t, _ in used),
            coefficients=tuple(c for _, c in used),
            latency=threshold,
        )
        return threshold, entry
    raise InternalAssertionFailure(f"W{j} undecodable at {network.name(i)} with every node in reach")


def _uncoded_latency(network: Network, scheme: UncodedScheme, profile: LambdaProfile, i: int, j: int):
    for t, rtt in zip(profile.orders[i], profile.rows[i]):
        if scheme.assignment[t] == j:
            return rtt, PlanEntry(node=i, file=j, helpers=(t,), coefficients=(1,), latency=rtt)
    raise RankDeficient(f"file W{j} is stored nowhere")


def evaluate(
    network: Network,
    scheme: AnyScheme,
    graph: Optional[NearestNeighborGraph] = None,
    profile: Optional[LambdaProfile] = None,
) -> LatencyReport:
    """Full latency matrix, per-node maxima, average, and bound comparison"""
    if scheme.n != network.n:
        raise ValueError(f"scheme covers {scheme.n} nodes, network has {network.n}")
    profile = profile or lambda_profile(network)
    k = scheme.k

    entries: Dict[Tuple[int, int], PlanEntry] = {}
    rows: List[Tuple[Fraction, ...]] = []
    for i in range(network.n):
        row = []
        for j in range(1, k + 1):
            if isinstance(scheme, UncodedScheme):
                value, entry = _uncoded_latency(network, scheme, profile, i, j)
            else:
                value, entry = decode_latency(network, scheme, i, j, profile)
            entries[(i, j)] = entry
            row.append(value)
        rows.append(tuple(row))

    worst_case = tuple(max(row) for row in rows)
    average = sum((sum(row, Fraction(0)) for row in rows), Fraction(0)) / (k * network.n)
    bounds = tuple(profile.rows[i][k - 1] for i in range(network.n))
    average_bound = avg_latency_lower_bound(profile, k)

    admissible = None
    failures: Tuple[Tuple[int, int], ...] = ()
    if graph is not None:
        result = is_admissible_on(network, scheme, graph)
        admissible, failures = result.admissible, result.failures

    field_spec = scheme.field if isinstance(scheme, LinearScheme) else FieldSpec(2)
    report = LatencyReport(
        node_names=network.node_names,
        k=k,
        latencies=tuple(rows),
        worst_case=worst_case,
        average=average,
        worstcase_bounds=bounds,
        average_bound=average_bound,
        worstcase_optimal=tuple(w == b for w, b in zip(worst_case, bounds)),
        average_optimal=average == average_bound,
        admissible=admissible,
        admissibility_failures=failures,
        plan=DecodingPlan(field_spec, entries),
    )
    logger.debug(f"Evaluated {type(scheme).__name__}: average {average}, bound {average_bound}")
    return report


def is_admissible_on(network: Network, scheme: AnyScheme, g: NearestNeighborGraph) -> Admissibility:
    """Every node decodes every file from itself plus its in-neighbors in g"""
    failures = []
    for i in range(network.n):
        helpers = [i] + sorted(g.in_neighbors[i])
        if isinstance(scheme, UncodedScheme):
            available = {scheme.assignment[t] for t in helpers}
            failures.extend((i, j) for j in range(1, scheme.k + 1) if j not in available)
        else:
            columns = scheme.columns(helpers)
            for j in range(1, scheme.k + 1):
                if solve_decode(columns, j, scheme.field) is None:
                    failures.append((i, j))
    return Admissibility(not failures, tuple(failures))


def short_labels(node_names: Sequence[str]) -> Tuple[str, ...]:
    """Shortest unique prefixes of the node names (Seoul -> S, ...)"""
    longest = max(len(name) for name in node_names)
    for length in range(1, longest + 1):
        labels = tuple(name[:length] for name in node_names)
        if len(set(labels)) == len(labels):
            return labels
    return tuple(node_names)


def decoding_plan_text(entry: PlanEntry, labels: Sequence[str]) -> str:
    """Render one plan entry as 'W2 = X_S + X_M + X_O'"""
    terms = []
    for helper, coefficient in zip(entry.helpers, entry.coefficients):
        symbol = f"X_{labels[helper]}"
        terms.append(symbol if coefficient == 1 else f"{coefficient}*{symbol}")
    return f"W{entry.file} = " + " + ".join(terms)
