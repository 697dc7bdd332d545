#!/usr/bin/env python3
"""
rtt-planner command line: load network -> bounds -> nearest-neighbor graphs
-> coloring -> construct -> evaluate -> report
"""

import argparse
import asyncio
import json
import logging
import random
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from .coloring import chromatic_number, k_colorable, max_clique_lower_bound
from .config import PlannerConfig
from .constructors import enumerate_binary_codes, scalar_mds_scheme, uncoded_from_coloring
from .docx_report import DocxReportWriter
from .errors import PlannerError, WrongColorCount
from .latency import evaluate
from .loaders import load_network, load_scheme
from .network import Network, lambda_profile, reduce_multihop
from .nngraph import build_nn_graphs, edge_list_text, extend, graph_document
from .oracle import FILTER_ALL, FILTERS, brute_force_uncoded, random_instances, verify_corollary1, verify_theorem1
from .planner import plan
from .render import (
    bounds_text,
    bounds_to_json,
    coloring_to_json,
    decoding_text,
    latency_table_text,
    ms,
    report_to_json,
)
from .schemes import FieldSpec, scheme_to_json
from .xlsx_report import XlsxReportWriter

logger = logging.getLogger("rtt-planner")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2


class Output:
    """Collects a JSON document and its text rendering; writes one of them"""

    def __init__(self, args):
        self.args = args

    def emit(self, document: Dict[str, Any], text: str) -> None:
        out = getattr(self.args, "out", None)
        as_json = self.args.json
        if out:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            if path.suffix.lower() == ".json":
                as_json = True
            elif path.suffix.lower() == ".txt":
                as_json = False
            payload = json.dumps(document, indent=2, ensure_ascii=False) if as_json else text
            path.write_text(payload + "\n", encoding="utf-8")
            logger.info(f"Wrote {path}")
            return
        print(json.dumps(document, indent=2, ensure_ascii=False) if as_json else text)


def _network(args) -> Network:
    network = load_network(args.network)
    if getattr(args, "multihop", False):
        network = reduce_multihop(network)
    return network


def _config(args) -> PlannerConfig:
    return PlannerConfig.from_env().with_overrides(
        field=getattr(args, "field", None),
        variant_cap=getattr(args, "variant_cap", None),
        workers=getattr(args, "workers", None),
    )


def cmd_bounds(args) -> int:
    profile = lambda_profile(_network(args))
    Output(args).emit(bounds_to_json(profile, args.k), bounds_text(profile, args.k))
    return EXIT_OK


def cmd_nngraph(args) -> int:
    network = _network(args)
    variants = build_nn_graphs(network, args.k, _config(args).variant_cap)
    names = network.node_names
    document = {
        "format": 1,
        "k": args.k,
        "total": variants.total,
        "truncated": variants.truncated,
        "variants": [graph_document(g) for g in variants],
    }
    lines = [f"{variants.total} G_{args.k - 1} variant(s){' (truncated)' if variants.truncated else ''}"]
    for index, g in enumerate(variants):
        h = extend(g)
        clique = sorted(max_clique_lower_bound(h))
        lines.append(f"--- variant {index}")
        lines.append(edge_list_text(g))
        lines.append("extended graph: " + ", ".join(f"{names[u]}-{names[v]}" for u, v in h.edges()))
        lines.append(f"largest clique ({len(clique)}): {', '.join(names[v] for v in clique)}")
    Output(args).emit(document, "\n".join(lines))
    return EXIT_OK


def cmd_color(args) -> int:
    network = _network(args)
    config = _config(args)
    variants = build_nn_graphs(network, args.k, config.variant_cap)
    h = extend(variants[args.variant])
    names = network.node_names
    if args.budget is None:
        count, coloring = chromatic_number(h, config.color_budget)
        document = {"format": 1, "chromatic_number": count, "coloring": coloring_to_json(coloring, names)}
        Output(args).emit(document, f"chromatic number {count}\n" + _coloring_text(coloring.colors, names))
        return EXIT_OK
    coloring = k_colorable(h, args.budget, config.color_budget)
    document = {
        "format": 1,
        "colors": args.budget,
        "colorable": coloring is not None,
        "coloring": coloring_to_json(coloring, names),
    }
    if coloring is None:
        Output(args).emit(document, f"extended graph is not {args.budget}-colorable")
        return EXIT_NEGATIVE
    Output(args).emit(document, f"{args.budget}-coloring\n" + _coloring_text(coloring.colors, names))
    return EXIT_OK


def _coloring_text(colors, names) -> str:
    return "\n".join(f"  {name}: {color}" for name, color in zip(names, colors))


def cmd_construct(args) -> int:
    network = _network(args)
    config = _config(args)
    g = build_nn_graphs(network, args.k, config.variant_cap)[args.variant]
    h = extend(g)
    if args.kind == "uncoded":
        coloring = k_colorable(h, args.k, config.color_budget)
        if coloring is None:
            raise WrongColorCount(f"extended graph is not {args.k}-colorable; no optimal uncoded placement")
        scheme = uncoded_from_coloring(g, coloring)
    elif args.kind == "binary":
        coloring = k_colorable(h, args.k + 1, config.color_budget)
        if coloring is None:
            raise WrongColorCount(f"extended graph is not {args.k + 1}-colorable")
        codes = enumerate_binary_codes(g, coloring)
        if args.coded_color is not None:
            codes = [code for code in codes if code.plan.coded_color == args.coded_color]
            if not codes:
                raise WrongColorCount(f"coded color {args.coded_color} outside 0..{args.k}")
        scheme = codes[0].scheme
    else:
        scheme = scalar_mds_scheme(network, args.k, FieldSpec(config.field))
    document = scheme_to_json(scheme, network)
    text = "\n".join(f"{name}: {scheme.formula(i)}" for i, name in enumerate(network.node_names))
    Output(args).emit(document, text)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    network = _network(args)
    scheme, graph = load_scheme(args.scheme, network)
    if graph is None and scheme.k <= network.n:
        graph = build_nn_graphs(network, scheme.k, _config(args).variant_cap)[0]
    report = evaluate(network, scheme, graph=graph)
    text = latency_table_text(report, scheme) + "\n\n" + decoding_text(report)
    Output(args).emit(report_to_json(report), text)
    return EXIT_OK


def cmd_search(args) -> int:
    network = _network(args)
    config = _config(args)
    result = brute_force_uncoded(
        network,
        args.k,
        args.filter,
        budget=args.budget or config.budget,
        workers=config.workers,
    )
    names = network.node_names
    document = {
        "format": 1,
        "k": args.k,
        "seed": args.seed,
        "filter": result.filter,
        "explored": result.explored,
        "best_average": None if result.best_average is None else str(result.best_average),
        "witnesses": [dict(zip(names, witness)) for witness in result.witnesses],
    }
    if result.best_average is None:
        text = f"no assignment passes the {result.filter} filter ({result.explored} explored)"
    else:
        text = (
            f"best average {ms(result.best_average)} over {result.explored} assignment(s), "
            f"{len(result.witnesses)} witness(es)"
        )
        shown = list(result.witnesses[: args.show])
        if args.seed is not None:
            shown = random.Random(args.seed).sample(list(result.witnesses), min(args.show, len(result.witnesses)))
        for witness in shown:
            text += "\n  " + " ".join(f"{name}:W{f}" for name, f in zip(names, witness))
    Output(args).emit(document, text)
    return EXIT_OK


def _verify_networks(args) -> List[Network]:
    if args.network:
        return [_network(args)]
    biases = [float(b) for b in args.tie_bias.split(",")]
    sizes = range(args.min_n, args.max_n + 1)
    return [network for network, _ in random_instances(args.random, args.seed, sizes, biases)]


def cmd_verify(args) -> int:
    config = _config(args)
    networks = _verify_networks(args)
    rng = random.Random(args.seed)
    results = []
    failures = 0
    for index, network in enumerate(networks):
        if args.claim == "corollary1":
            outcome = verify_corollary1(network, config.color_budget)
            results.append({"index": index, "n": network.n, "average": str(outcome.report.average)})
            continue
        k = args.k if args.k is not None else rng.randint(min(2, network.n), network.n)
        verdict = verify_theorem1(
            network, k, variant_cap=config.variant_cap, budget=args.budget or config.budget,
            color_budget=config.color_budget,
        )
        if verdict.agree is False:
            failures += 1
        results.append({
            "index": index,
            "n": network.n,
            "k": k,
            "coloring": verdict.coloring_answer,
            "oracle": verdict.oracle_answer,
            "agree": verdict.agree,
            "details": verdict.details,
        })
    unknown = sum(1 for r in results if r.get("agree", True) is None)
    document = {"format": 1, "claim": args.claim, "checked": len(results), "failures": failures,
                "unknown": unknown, "results": results}
    text = f"{args.claim}: {len(results)} checked, {failures} mismatch(es), {unknown} unknown"
    Output(args).emit(document, text)
    return EXIT_OK if failures == 0 else EXIT_NEGATIVE


def cmd_plan(args) -> int:
    network = _network(args)
    config = _config(args).with_overrides(color_budget=args.budget)
    document = plan(network, args.k, config, network_ref=args.network)
    out = args.out
    if out and Path(out).suffix.lower() in (".xlsx", ".docx"):
        writer = XlsxReportWriter() if out.lower().endswith(".xlsx") else DocxReportWriter()
        status = asyncio.run(writer.write_plan(document, out))
        if status.startswith("Error"):
            raise PlannerError(status)
        print(status)
        return document.exit_code

    text = "\n".join(
        [f"Verdict: {document.verdict}"]
        + [f"Note: {note}" for note in document.notes]
        + ["", latency_table_text(document.report, document.scheme), "", decoding_text(document.report)]
    )
    Output(args).emit(document.to_json(), text)
    return document.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rtt-planner", description="RTT-aware geo-distributed storage planner")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (-vv for debug)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, network_required=True):
        if network_required:
            p.add_argument("network", help="network file (.json, .csv or .xlsx)")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="json", action="store_true", help="JSON output")
        fmt.add_argument("--text", dest="json", action="store_false", help="text output (default)")
        p.set_defaults(json=False)
        p.add_argument("--out", help="write output to a file; the suffix picks the format")
        p.add_argument("--multihop", action="store_true", help="reduce to shortest-path RTTs first")
        p.add_argument("--variant-cap", type=int, help="maximum number of tie variants")
        return p

    p = common(sub.add_parser("bounds", help="latency lower bounds"))
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = common(sub.add_parser("nngraph", help="nearest-neighbor graphs and extended graphs"))
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_nngraph)

    p = common(sub.add_parser("color", help="color the extended graph"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, help="number of colors (omit for the chromatic number)")
    p.add_argument("--variant", type=int, default=0)
    p.set_defaults(func=cmd_color)

    p = common(sub.add_parser("construct", help="build a storage scheme"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kind", choices=("uncoded", "binary", "mds"), default="uncoded")
    p.add_argument("--coded-color", type=int)
    p.add_argument("--field", type=int)
    p.add_argument("--variant", type=int, default=0)
    p.set_defaults(func=cmd_construct)

    p = common(sub.add_parser("evaluate", help="exact latencies of a scheme or plan document"))
    p.add_argument("scheme", help="scheme or plan JSON document")
    p.set_defaults(func=cmd_evaluate)

    p = common(sub.add_parser("search", help="exhaustive uncoded placement search"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--filter", choices=FILTERS, default=FILTER_ALL)
    p.add_argument("--budget", type=int, help="maximum number of assignments")
    p.add_argument("--workers", type=int)
    p.add_argument("--show", type=int, default=10, help="witnesses listed in text output")
    p.add_argument("--seed", type=int, help="sample the listed witnesses with this seed")
    p.set_defaults(func=cmd_search)

    p = common(sub.add_parser("verify", help="cross-check coloring results by exhaustive search"), False)
    p.add_argument("claim", choices=("theorem1", "corollary1"))
    p.add_argument("network", nargs="?", help="network file; random networks when omitted")
    p.add_argument("--k", type=int, help="file count (random per network when omitted)")
    p.add_argument("--random", type=int, default=100, help="number of random networks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--tie-bias", default="0,0.3,1", help="comma-separated tie biases to cycle through")
    p.add_argument("--budget", type=int, help="maximum number of assignments")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("plan", help="full pipeline"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--field", type=int, help="prime field for the MDS fallback")
    p.add_argument("--budget", type=int, help="node expansions allowed to each coloring search")
    p.set_defaults(func=cmd_plan)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = PlannerConfig.from_env()
    except PlannerError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    level = {0: config.log_level, 1: "INFO"}.get(args.verbose, "DEBUG")
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (PlannerError, OSError, ValueError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
