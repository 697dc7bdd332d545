#!/usr/bin/env python3
"""
RTT planner MCP server: the planning library as stdio tools
"""

import asyncio
import json
import logging
import sys
from typing import Any, Dict

# MCP imports
from mcp.server import NotificationOptions, Server
from mcp.server.models import InitializationOptions
from mcp import types

# Local imports
from .coloring import chromatic_number, k_colorable
from .config import PlannerConfig
from .errors import FormatError
from .latency import evaluate
from .loaders import load_network, network_from_json, scheme_from_document
from .network import Network, lambda_profile, reduce_multihop
from .nngraph import build_nn_graphs, edge_list_text, extend
from .oracle import FILTER_ALL, brute_force_uncoded
from .planner import plan
from .render import bounds_to_json, coloring_to_json, report_to_json

logger = logging.getLogger("rtt-planner-mcp")

SERVER_NAME = "rtt-planner"
SERVER_VERSION = "1.0.0"

_NETWORK_PROPERTIES = {
    "network_path": {
        "type": "string",
        "description": "Network file (.json, .csv or .xlsx)"
    },
    "network": {
        "type": "object",
        "description": "Inline network document {\"nodes\": [...], \"rtt_ms\": [[...]]}"
    },
    "multihop": {
        "type": "boolean",
        "description": "Replace RTTs by shortest-path totals first",
        "default": False
    },
}

_K_PROPERTY = {"k": {"type": "integer", "description": "Number of files", "minimum": 1}}


def _schema(*extra: Dict[str, Any], required=("k",)) -> Dict[str, Any]:
    properties = dict(_NETWORK_PROPERTIES)
    for block in extra:
        properties.update(block)
    return {"type": "object", "properties": properties, "required": list(required)}


class RTTPlannerMCP:
    def __init__(self, config: PlannerConfig = None):
        self.config = config or PlannerConfig.from_env()
        self.server = Server(SERVER_NAME)
        self.setup_handlers()
        logger.info("RTT planner server initialized")

    def _network(self, arguments: Dict[str, Any]) -> Network:
        if arguments.get("network") is not None:
            network = network_from_json(arguments["network"])
        elif arguments.get("network_path"):
            network = load_network(arguments["network_path"])
        else:
            raise FormatError("either network_path or network is required")
        if arguments.get("multihop"):
            network = reduce_multihop(network)
        return network

    @staticmethod
    def _k(arguments: Dict[str, Any]) -> int:
        try:
            return int(arguments["k"])
        except (KeyError, TypeError, ValueError):
            raise FormatError("integer k is required") from None

    def compute_bounds(self, arguments: Dict[str, Any]) -> Dict[str, Any]:
        network = self._network(arguments)
        return bounds_to_json(lambda_profile(network), self._k(arguments))

    def nearest_neighbor_graphs(self, arguments: Dict[str, Any]) -> Dict[str, Any]:
        network = self._network(arguments)
        cap = arguments.get("variant_cap") or self.config.variant_cap
        variants = build_nn_graphs(network, self._k(arguments), int(cap))
        return {
            "format": 1,
            "total": variants.total,
            "truncated": variants.truncated,
            "variants": [edge_list_text(g).splitlines() for g in variants],
        }

    def color_extended_graph(self, arguments: Dict[str, Any]) -> Dict[str, Any]:
        network = self._network(arguments)
        k = self._k(arguments)
        variant = int(arguments.get("variant", 0))
        h = extend(build_nn_graphs(network, k, self.config.variant_cap)[variant])
        colors = arguments.get("colors")
        if colors is None:
            count, coloring = chromatic_number(h, self.config.color_budget)
            return {"format": 1, "chromatic_number": count, "coloring": coloring_to_json(coloring, network.node_names)}
        coloring = k_colorable(h, int(colors), self.config.color_budget)
        return {
            "format": 1,
            "colors": int(colors),
            "colorable": coloring is not None,
            "coloring": coloring_to_json(coloring, network.node_names),
        }

    def plan_storage(self, arguments: Dict[str, Any]) -> Dict[str, Any]:
        network = self._network(arguments)
        config = self.config.with_overrides(field=arguments.get("field"))
        document = plan(network, self._k(arguments), config, arguments.get("network_path", ""))
        return document.to_json()

    def evaluate_scheme(self, arguments: Dict[str, Any]) -> Dict[str, Any]:
        network = self._network(arguments)
        scheme_document = arguments.get("scheme")
        if not isinstance(scheme_document, dict):
            raise FormatError("scheme document is required")
        scheme, graph = scheme_from_document(scheme_document, network)
        if graph is None and scheme.k <= network.n:
            graph = build_nn_graphs(network, scheme.k, self.config.variant_cap)[0]
        return report_to_json(evaluate(network, scheme, graph=graph))

    def search_uncoded(self, arguments: Dict[str, Any]) -> Dict[str, Any]:
        network = self._network(arguments)
        result = brute_force_uncoded(
            network,
            self._k(arguments),
            arguments.get("filter", FILTER_ALL),
            budget=int(arguments.get("budget") or self.config.budget),
            workers=self.config.workers,
        )
        names = network.node_names
        return {
            "format": 1,
            "filter": result.filter,
            "explored": result.explored,
            "best_average": None if result.best_average is None else str(result.best_average),
            "witnesses": [dict(zip(names, witness)) for witness in result.witnesses],
        }

    def setup_handlers(self):
        @self.server.list_tools()
        async def list_tools():
            return [
                types.Tool(
                    name="compute_bounds",
                    description="Per-node worst-case and system-average latency lower bounds",
                    inputSchema=_schema(_K_PROPERTY)
                ),
                types.Tool(
                    name="nearest_neighbor_graphs",
                    description="Enumerate the nearest-neighbor graph variants for k files",
                    inputSchema=_schema(_K_PROPERTY, {
                        "variant_cap": {"type": "integer", "description": "Maximum number of tie variants"}
                    })
                ),
                types.Tool(
                    name="color_extended_graph",
                    description="Chromatic number of the extended graph, or a coloring with a given number of colors",
                    inputSchema=_schema(_K_PROPERTY, {
                        "variant": {"type": "integer", "description": "Tie variant index", "default": 0},
                        "colors": {"type": "integer", "description": "Color budget (omit for the chromatic number)"}
                    })
                ),
                types.Tool(
                    name="plan_storage",
                    description="Plan an optimal uncoded placement, a binary XOR code or an MDS fallback",
                    inputSchema=_schema(_K_PROPERTY, {
                        "field": {"type": "integer", "description": "Prime field for the MDS fallback"}
                    })
                ),
                types.Tool(
                    name="evaluate_scheme",
                    description="Exact decode latencies of a storage scheme document",
                    inputSchema=_schema({
                        "scheme": {"type": "object", "description": "Scheme document (uncoded or linear), or a plan document"}
                    }, required=("scheme",))
                ),
                types.Tool(
                    name="search_uncoded",
                    description="Exhaustive search over uncoded placements",
                    inputSchema=_schema(_K_PROPERTY, {
                        "filter": {
                            "type": "string",
                            "enum": ["all", "worst-case-optimal-only"],
                            "default": "all"
                        },
                        "budget": {"type": "integer", "description": "Maximum number of assignments"}
                    })
                ),
            ]

        @self.server.call_tool()
        async def call_tool(name: str, arguments: dict):
            logger.info(f"Tool called: {name}")
            try:
                result = self.dispatch(name, arguments or {})
                return [types.TextContent(type="text", text=result)]
            except Exception as e:
                logger.error(f"Tool '{name}' failed: {str(e)}")
                return [types.TextContent(type="text", text=f"Error: {str(e)}")]

    def dispatch(self, name: str, arguments: Dict[str, Any]) -> str:
        if name == "compute_bounds":
            result = self.compute_bounds(arguments)
        elif name == "nearest_neighbor_graphs":
            result = self.nearest_neighbor_graphs(arguments)
        elif name == "color_extended_graph":
            result = self.color_extended_graph(arguments)
        elif name == "plan_storage":
            result = self.plan_storage(arguments)
        elif name == "evaluate_scheme":
            result = self.evaluate_scheme(arguments)
        elif name == "search_uncoded":
            result = self.search_uncoded(arguments)
        else:
            return f"Unknown tool: {name}"
        return json.dumps(result, indent=2, ensure_ascii=False)

    async def run(self):
        try:
            from mcp.server.stdio import stdio_server
            logger.info("Starting MCP server...")
            async with stdio_server() as (read_stream, write_stream):
                logger.info("STDIO connection established")
                await self.server.run(
                    read_stream,
                    write_stream,
                    InitializationOptions(
                        server_name=SERVER_NAME,
                        server_version=SERVER_VERSION,
                        capabilities=self.server.get_capabilities(
                            notification_options=NotificationOptions(),
                            experimental_capabilities={}
                        )
                    )
                )
        except Exception as e:
            logger.error(f"Server error: {e}")
            raise


def main():
    config = PlannerConfig.from_env()
    logging.basicConfig(
        level=config.log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    try:
        logger.info("Starting RTT planner...")
        asyncio.run(RTTPlannerMCP(config).run())
    except KeyboardInterrupt:
        logger.info("Server stopped")
    except Exception as e:
        logger.error(f"Fatal error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
