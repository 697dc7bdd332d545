"""
Brute-force and randomized cross-checks of the coloring-based results
"""

import itertools
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .coloring import DEFAULT_COLOR_BUDGET, k_colorable
from .constructors import uncoded_from_coloring
from .errors import BudgetExceeded, InternalAssertionFailure
from .latency import LatencyReport, evaluate
from .network import Network, avg_latency_lower_bound, check_k, lambda_profile, validate_network
from .nngraph import DEFAULT_VARIANT_CAP, NearestNeighborGraph, build_nn_graphs, extend
from .schemes import UncodedScheme

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 10**8

FILTER_ALL = "all"
FILTER_WORST_CASE = "worst-case-optimal-only"
FILTERS = (FILTER_ALL, FILTER_WORST_CASE)


@dataclass(frozen=True)
class SearchResult:
    best_average: Optional[Fraction]
    witnesses: Tuple[Tuple[int, ...], ...]
    filter: str
    explored: int


@dataclass(frozen=True)
class _Chunk:
    first_file: int
    n: int
    k: int
    orders: Tuple[Tuple[int, ...], ...]
    # RTTs scaled by a common denominator so the inner loop stays in ints
    rows: Tuple[Tuple[int, ...], ...]
    bounds: Tuple[int, ...]
    worst_case_only: bool
    stop_at: Optional[int]


def _search_chunk(chunk: _Chunk) -> Tuple[Optional[int], List[Tuple[int, ...]], int]:
    """Best scaled latency total and its witnesses for assignments starting with first_file"""
    k = chunk.k
    best: Optional[int] = None
    witnesses: List[Tuple[int, ...]] = []
    explored = 0
    for rest in itertools.product(range(1, k + 1), repeat=chunk.n - 1):
        assignment = (chunk.first_file,) + rest
        explored += 1
        if len(set(assignment)) < k:
            continue
        total = 0
        feasible = True
        for i in range(chunk.n):
            seen = set()
            for t, rtt in zip(chunk.orders[i], chunk.rows[i]):
                f = assignment[t]
                if f not in seen:
                    seen.add(f)
                    total += rtt
                    if len(seen) == k:
                        break
            if chunk.worst_case_only and rtt > chunk.bounds[i]:
                feasible = False
                break
        if not feasible:
            continue
        if best is None or total < best:
            best, witnesses = total, [assignment]
        elif total == best:
            witnesses.append(assignment)
        if chunk.stop_at is not None and best <= chunk.stop_at:
            break
    return best, witnesses, explored


def brute_force_uncoded(
    network: Network,
    k: int,
    filter: str = FILTER_ALL,
    budget: int = DEFAULT_SEARCH_BUDGET,
    full_witnesses: bool = True,
    stop_at: Optional[Fraction] = None,
    workers: int = 1,
) -> SearchResult:
    """Exhaustive search over all k^n uncoded assignments covering every file

    With full_witnesses=False node 0 is pinned to file 1 (file labels are
    interchangeable), which is enough for the minimum but not for the witness list.
    With stop_at the search ends once an average <= stop_at is seen.
    """
    check_k(k, network.n)
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {', '.join(FILTERS)}")
    space = k**network.n
    if space > budget:
        raise BudgetExceeded(f"{k}^{network.n} = {space} assignments exceed the budget of {budget}")

    profile = lambda_profile(network)
    scale = math.lcm(*(value.denominator for row in profile.rows for value in row))
    rows = tuple(tuple(int(value * scale) for value in row) for row in profile.rows)
    bounds = tuple(row[k - 1] for row in rows)
    stop_total = None if stop_at is None else math.floor(stop_at * scale * k * network.n)

    first_files = range(1, k + 1) if full_witnesses else range(1, 2)
    chunks = [
        _Chunk(f, network.n, k, profile.orders, rows, bounds, filter == FILTER_WORST_CASE, stop_total)
        for f in first_files
    ]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_chunk, chunks))
    else:
        results = []
        for chunk in chunks:
            results.append(_search_chunk(chunk))
            if stop_total is not None and results[-1][0] is not None and results[-1][0] <= stop_total:
                break

    best: Optional[int] = None
    witnesses: List[Tuple[int, ...]] = []
    explored = 0
    for chunk_best, chunk_witnesses, chunk_explored in results:
        explored += chunk_explored
        if chunk_best is None:
            continue
        if best is None or chunk_best < best:
            best, witnesses = chunk_best, list(chunk_witnesses)
        elif chunk_best == best:
            witnesses.extend(chunk_witnesses)

    best_average = None if best is None else Fraction(best, scale * k * network.n)
    logger.info(
        f"Explored {explored} assignment(s) for k={k} ({filter}): best average {best_average}, "
        f"{len(witnesses)} witness(es)"
    )
    return SearchResult(best_average, tuple(sorted(witnesses)), filter, explored)


@dataclass(frozen=True)
class Theorem1Verdict:
    # True/False from coloring; None when variant truncation leaves it open
    coloring_answer: Optional[bool]
    oracle_answer: bool
    agree: Optional[bool]
    details: str = ""
    graph: Optional[NearestNeighborGraph] = None
    witness: Optional[Tuple[int, ...]] = None


def verify_theorem1(
    network: Network,
    k: int,
    variant_cap: int = DEFAULT_VARIANT_CAP,
    budget: int = DEFAULT_SEARCH_BUDGET,
    color_budget: int = DEFAULT_COLOR_BUDGET,
) -> Theorem1Verdict:
    """Compare 'some G_{k-1} has a k-colorable extended graph' against exhaustive search"""
    check_k(k, network.n)
    profile = lambda_profile(network)
    bound = avg_latency_lower_bound(profile, k)

    variants = build_nn_graphs(network, k, variant_cap)
    coloring_answer: Optional[bool] = False
    colored_graph = None
    details = []
    for g in variants:
        coloring = k_colorable(extend(g), k, color_budget)
        if coloring is None:
            continue
        coloring_answer, colored_graph = True, g
        report = evaluate(network, uncoded_from_coloring(g, coloring), profile=profile)
        if not (report.average_optimal and all(report.worstcase_optimal)):
            details.append(f"placement from k-coloring misses the bounds: average {report.average} vs {bound}")
        break
    else:
        if variants.truncated:
            coloring_answer = None

    search = brute_force_uncoded(
        network, k, FILTER_WORST_CASE, budget=budget, full_witnesses=False, stop_at=bound
    )
    oracle_answer = search.best_average is not None and search.best_average == bound
    witness = search.witnesses[0] if oracle_answer else None

    agree = None if coloring_answer is None else (coloring_answer == oracle_answer and not details)
    if agree is False:
        details.append(
            f"coloring says {coloring_answer}, exhaustive search says {oracle_answer} "
            f"(best worst-case-optimal average {search.best_average}, bound {bound})"
        )
        logger.error(f"coloring and exhaustive search disagree for k={k}: {'; '.join(details)}")
    return Theorem1Verdict(coloring_answer, oracle_answer, agree, "; ".join(details), colored_graph, witness)


@dataclass(frozen=True)
class Corollary1Result:
    graph: NearestNeighborGraph
    placement: UncodedScheme
    report: LatencyReport


def loop_free_nn_graph(network: Network) -> NearestNeighborGraph:
    """A G_1 whose only cycles are mutual-nearest pairs

    Ties are broken by the key (rtt, min(i, j), max(i, j)), a strict order on
    links: along any longer cycle the key would have to keep increasing.
    """
    check_k(2, network.n)
    in_neighbors = []
    for i in range(network.n):
        nearest = min(
            (t for t in range(network.n) if t != i),
            key=lambda t: (network.rtt[t][i], min(i, t), max(i, t)),
        )
        in_neighbors.append(frozenset([nearest]))
    return NearestNeighborGraph(network, 2, tuple(in_neighbors))


def verify_corollary1(network: Network, color_budget: int = DEFAULT_COLOR_BUDGET) -> Corollary1Result:
    """Build and check an optimal uncoded placement for k=2"""
    g = loop_free_nn_graph(network)
    coloring = k_colorable(extend(g), 2, color_budget)
    if coloring is None:
        raise InternalAssertionFailure("extended graph of a loop-free G_1 is not 2-colorable")
    placement = uncoded_from_coloring(g, coloring)
    report = evaluate(network, placement, graph=g)
    if not (report.average_optimal and all(report.worstcase_optimal) and report.admissible):
        raise InternalAssertionFailure(
            f"k=2 placement misses the bounds: average {report.average} vs {report.average_bound}"
        )
    return Corollary1Result(g, placement, report)


def random_network(
    seed: int,
    n: int,
    rtt_range: Tuple[int, int] = (1, 300),
    tie_bias: float = 0.0,
) -> Network:
    """Deterministic symmetric network; tie_bias is the chance an RTT repeats an earlier one"""
    low, high = rtt_range
    if not 0 <= tie_bias <= 1:
        raise ValueError(f"tie_bias must lie in [0, 1], got {tie_bias}")
    if n < 1 or low < 0 or high <= low:
        raise ValueError(f"bad random network parameters n={n}, rtt_range={rtt_range}")
    rng = random.Random(seed)
    resolution = 1000
    drawn: List[Fraction] = []

    def fresh() -> Fraction:
        while True:
            value = Fraction(rng.randint(low * resolution, high * resolution), resolution)
            if value not in drawn:
                return value

    matrix = [[Fraction(0)] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        if drawn and rng.random() < tie_bias:
            value = rng.choice(drawn)
        else:
            value = fresh()
        drawn.append(value)
        matrix[i][j] = matrix[j][i] = value
    return validate_network([f"N{i}" for i in range(n)], matrix)


def random_instances(count: int, seed: int, sizes: Sequence[int], tie_biases: Sequence[float]):
    """(network, seed) pairs cycling through sizes and tie biases deterministically"""
    rng = random.Random(seed)
    for index in range(count):
        n = rng.choice(list(sizes))
        bias = tie_biases[index % len(tie_biases)]
        network_seed = rng.randrange(2**32)
        yield random_network(network_seed, n, tie_bias=bias), network_seed
