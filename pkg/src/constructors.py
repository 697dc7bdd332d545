"""
Scheme constructors: optimal uncoded placement from a k-coloring, binary XOR
codes from a (k+1)-coloring, and the scalar MDS baseline
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .coloring import Coloring, is_proper
from .errors import (
    FieldTooSmall,
    KOutOfRange,
    MissingFileUndefined,
    NotAProperColoring,
    WrongColorCount,
)
from .latency import LatencyReport, evaluate
from .network import Network, check_k
from .nngraph import NearestNeighborGraph, extend, receive_set
from .schemes import FieldSpec, LinearScheme, UncodedScheme

logger = logging.getLogger(__name__)

BINARY = FieldSpec(2)


def _check_coloring(g: NearestNeighborGraph, c: Coloring, colors: int) -> None:
    if c.color_count != colors:
        raise WrongColorCount(f"expected a {colors}-coloring, got {c.color_count} colors")
    if len(c.colors) != g.n or any(not 0 <= color < colors for color in c.colors):
        raise WrongColorCount(f"coloring must assign one of {colors} colors to each of {g.n} nodes")
    if not is_proper(extend(g), c.colors):
        raise NotAProperColoring("adjacent nodes of the extended graph share a color")


def uncoded_from_coloring(g: NearestNeighborGraph, c: Coloring) -> UncodedScheme:
    """Color m becomes file m+1"""
    _check_coloring(g, c, g.k)
    return UncodedScheme(tuple(color + 1 for color in c.colors), g.k)


@dataclass(frozen=True)
class BinaryCodePlan:
    coloring: Coloring
    coded_color: int
    color_to_file: Dict[int, int]
    # per coded node i: its receive set R(i) and the missing file of each r in {i} | R(i)
    receive_sets: Dict[int, FrozenSet[int]]
    missing: Dict[int, Dict[int, int]]

    def coded_nodes(self) -> Tuple[int, ...]:
        return tuple(sorted(self.receive_sets))

    def stored_files(self, i: int) -> FrozenSet[int]:
        """File indices XOR-ed into node i"""
        if i in self.missing:
            return frozenset(self.missing[i].values())
        return frozenset([self.color_to_file[self.coloring.colors[i]]])


def canonical_mapping(color_count: int, coded_color: int) -> Dict[int, int]:
    """Remaining colors in ascending order map to files 1..k"""
    remaining = [color for color in range(color_count) if color != coded_color]
    return {color: f for f, color in enumerate(remaining, start=1)}


def missing_file(g: NearestNeighborGraph, files: List[Optional[int]], r: int, coded: int) -> int:
    """The single file absent from r and its in-neighbors other than the coded node"""
    nodes = ({r} | g.in_neighbors[r]) - {coded}
    if any(files[t] is None for t in nodes):
        raise MissingFileUndefined(f"node {g.network.name(r)} sees more than one coded node")
    absent = set(range(1, g.k + 1)) - {files[t] for t in nodes}
    if len(absent) != 1:
        raise MissingFileUndefined(
            f"node {g.network.name(r)} misses {len(absent)} files around coded node {g.network.name(coded)}"
        )
    return absent.pop()


def plan_binary_code(
    g: NearestNeighborGraph,
    c: Coloring,
    coded_color: int,
    mapping: Optional[Mapping[int, int]] = None,
) -> BinaryCodePlan:
    k = g.k
    if k < 2:
        raise KOutOfRange(k, g.n, "binary codes need k >= 2 files")
    _check_coloring(g, c, k + 1)
    if not 0 <= coded_color <= k:
        raise WrongColorCount(f"coded color {coded_color} outside 0..{k}")
    mapping = dict(mapping) if mapping is not None else canonical_mapping(k + 1, coded_color)
    if set(mapping) != set(range(k + 1)) - {coded_color} or sorted(mapping.values()) != list(range(1, k + 1)):
        raise WrongColorCount("color-to-file mapping must be a bijection from the uncoded colors onto 1..k")

    files = [None if color == coded_color else mapping[color] for color in c.colors]
    receive_sets: Dict[int, FrozenSet[int]] = {}
    missing: Dict[int, Dict[int, int]] = {}
    for i in range(g.n):
        if files[i] is not None:
            continue
        receivers = receive_set(g, i)
        receive_sets[i] = receivers
        missing[i] = {r: missing_file(g, files, r, i) for r in sorted({i} | receivers)}
    return BinaryCodePlan(c, coded_color, mapping, receive_sets, missing)


def scheme_from_plan(g: NearestNeighborGraph, plan: BinaryCodePlan) -> LinearScheme:
    columns = []
    for i in range(g.n):
        stored = plan.stored_files(i)
        columns.append([1 if j in stored else 0 for j in range(1, g.k + 1)])
    return LinearScheme.from_columns(BINARY, columns)


def binary_code_from_coloring(
    g: NearestNeighborGraph,
    c: Coloring,
    coded_color: int,
    mapping: Optional[Mapping[int, int]] = None,
) -> LinearScheme:
    """Uncoded colors store their file; each coded node stores the XOR of the
    missing files of itself and its receive set"""
    return scheme_from_plan(g, plan_binary_code(g, c, coded_color, mapping))


@dataclass(frozen=True)
class BinaryCode:
    scheme: LinearScheme
    plan: BinaryCodePlan
    report: LatencyReport


def enumerate_binary_codes(g: NearestNeighborGraph, c: Coloring) -> List[BinaryCode]:
    """One code per coded-color choice, best average latency first"""
    codes = []
    for coded_color in range(c.color_count):
        plan = plan_binary_code(g, c, coded_color)
        scheme = scheme_from_plan(g, plan)
        codes.append(BinaryCode(scheme, plan, evaluate(g.network, scheme, graph=g)))
    codes.sort(key=lambda code: (code.report.average, code.plan.coded_color))
    logger.info(
        f"{len(codes)} binary code(s); best average {codes[0].report.average} "
        f"with coded color {codes[0].plan.coded_color}"
    )
    return codes


def scalar_mds_scheme(network: Network, k: int, field: FieldSpec) -> LinearScheme:
    """k x n Vandermonde generator on evaluation points 1..n over GF(p)"""
    check_k(k, network.n)
    if field.p <= network.n:
        raise FieldTooSmall(f"{field} has too few points for {network.n} nodes; need p > n")
    generator = [[pow(point, power, field.p) for point in range(1, network.n + 1)] for power in range(k)]
    return LinearScheme.create(field, generator)
