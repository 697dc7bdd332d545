"""
End-to-end planning: bounds, nearest-neighbor graphs, coloring, construction
and evaluation of one storage scheme for a network and file count
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import galois

from .coloring import Coloring, k_colorable
from .config import PlannerConfig
from .constructors import BinaryCode, enumerate_binary_codes, scalar_mds_scheme, uncoded_from_coloring
from .errors import TimeBudgetExceeded
from .latency import LatencyReport, evaluate
from .loaders import network_to_json
from .network import Network, check_k, lambda_profile
from .nngraph import NearestNeighborGraph, build_nn_graphs, extend
from .render import coloring_to_json, report_to_json
from .schemes import AnyScheme, FieldSpec, scheme_to_json

logger = logging.getLogger(__name__)

OPTIMAL_UNCODED = "optimal-uncoded"
BINARY_CODED = "binary-coded(χ=k+1)"
MDS_FALLBACK = "mds-fallback"
NO_CONSTRUCTION = "no-construction(χ>k+1)"

# CLI exit status per verdict
EXIT_CODES = {
    OPTIMAL_UNCODED: 0,
    BINARY_CODED: 0,
    MDS_FALLBACK: 0,
    NO_CONSTRUCTION: 2,
}


@dataclass(frozen=True)
class PlanDocument:
    network_ref: str
    network: Network
    k: int
    verdict: str
    graph: NearestNeighborGraph
    variant_index: int
    variant_total: int
    variants_truncated: bool
    coloring: Optional[Coloring]
    scheme: AnyScheme
    report: LatencyReport
    coded_color: Optional[int] = None
    notes: Tuple[str, ...] = field(default=())

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_json(self) -> Dict[str, Any]:
        names = self.network.node_names
        return {
            "format": 1,
            "network_ref": self.network_ref,
            "network": network_to_json(self.network),
            "k": self.k,
            "verdict": self.verdict,
            "variant": {
                "index": self.variant_index,
                "total": self.variant_total,
                "truncated": self.variants_truncated,
                "edges": [[names[src], names[dst]] for src, dst in self.graph.edges()],
            },
            "coloring": coloring_to_json(self.coloring, names),
            "coded_color": self.coded_color,
            "scheme": scheme_to_json(self.scheme, self.network),
            "report": report_to_json(self.report),
            "notes": list(self.notes),
        }


def _mds_field(network: Network, config: PlannerConfig) -> FieldSpec:
    if config.field > network.n:
        return FieldSpec(config.field)
    p = galois.next_prime(network.n)
    logger.info(f"GF({config.field}) is too small for an MDS code on {network.n} nodes; using GF({p})")
    return FieldSpec(int(p))


def plan(network: Network, k: int, config: Optional[PlannerConfig] = None, network_ref: str = "") -> PlanDocument:
    """Pick the strongest available construction for (network, k)

    Order: an optimal uncoded placement when some G_{k-1} has a k-colorable
    extended graph, else the best binary XOR code over the (k+1)-colorable
    variants, else a Vandermonde MDS code.
    """
    config = config or PlannerConfig()
    check_k(k, network.n)
    profile = lambda_profile(network)
    variants = build_nn_graphs(network, k, config.variant_cap)
    logger.info(f"Planning k={k} on {network.n} node(s): {len(variants)} of {variants.total} G_{k - 1} variant(s)")

    notes: List[str] = []
    inconclusive = variants.truncated
    if variants.truncated:
        notes.append(f"only {len(variants)} of {variants.total} tie variants examined")

    def document(verdict, index, coloring, scheme, report, coded_color=None):
        return PlanDocument(
            network_ref=network_ref,
            network=network,
            k=k,
            verdict=verdict,
            graph=variants[index],
            variant_index=index,
            variant_total=variants.total,
            variants_truncated=variants.truncated,
            coloring=coloring,
            scheme=scheme,
            report=report,
            coded_color=coded_color,
            notes=tuple(notes),
        )

    for index, g in enumerate(variants):
        try:
            coloring = k_colorable(extend(g), k, config.color_budget)
        except TimeBudgetExceeded:
            inconclusive = True
            notes.append(f"k-coloring of variant {index} exceeded the search budget")
            continue
        if coloring is not None:
            scheme = uncoded_from_coloring(g, coloring)
            report = evaluate(network, scheme, graph=g, profile=profile)
            logger.info(f"Variant {index} is {k}-colorable: optimal uncoded placement")
            return document(OPTIMAL_UNCODED, index, coloring, scheme, report)

    best: Optional[Tuple[int, Coloring, BinaryCode]] = None
    if k >= 2:
        for index, g in enumerate(variants):
            try:
                coloring = k_colorable(extend(g), k + 1, config.color_budget)
            except TimeBudgetExceeded:
                inconclusive = True
                notes.append(f"(k+1)-coloring of variant {index} exceeded the search budget")
                continue
            if coloring is None:
                continue
            code = enumerate_binary_codes(g, coloring)[0]
            if best is None or code.report.average < best[2].report.average:
                best = (index, coloring, code)
    if best is not None:
        index, coloring, code = best
        logger.info(f"Binary code from variant {index}, coded color {code.plan.coded_color}")
        return document(BINARY_CODED, index, coloring, code.scheme, code.report, code.plan.coded_color)

    field_spec = _mds_field(network, config)
    scheme = scalar_mds_scheme(network, k, field_spec)
    report = evaluate(network, scheme, graph=variants[0], profile=profile)
    if inconclusive:
        verdict = MDS_FALLBACK
        notes.append("coloring search was inconclusive; MDS code used")
    else:
        verdict = NO_CONSTRUCTION
        notes.append("every extended graph needs more than k+1 colors; no construction is known")
    logger.warning(f"Falling back to a {field_spec} MDS code ({verdict})")
    return document(verdict, 0, None, scheme, report)
