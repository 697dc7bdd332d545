"""
Network and scheme document loading for JSON, CSV and XLSX inputs
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .errors import FormatError
from .network import Network, format_rational, validate_network
from .nngraph import NearestNeighborGraph, graph_from_edges
from .schemes import AnyScheme, scheme_from_json

# Tabular inputs
try:
    import pandas as pd
    TABLES_AVAILABLE = True
except ImportError:
    TABLES_AVAILABLE = False

logger = logging.getLogger(__name__)

SUPPORTED_EXTENSIONS = {
    '.json': 'Network JSON document',
    '.csv': 'RTT table (CSV)',
    '.xlsx': 'RTT table (Excel)',
}

PathLike = Union[str, Path]


def network_from_json(document: Dict[str, Any]) -> Network:
    """Validate a {"nodes": [...], "rtt_ms": [[...]]} document"""
    if not isinstance(document, dict):
        raise FormatError("network document must be a JSON object")
    try:
        nodes = document["nodes"]
        matrix = document["rtt_ms"]
    except KeyError as e:
        raise FormatError(f"network document lacks {e}") from None
    if not isinstance(nodes, list) or not isinstance(matrix, list):
        raise FormatError("'nodes' and 'rtt_ms' must be lists")
    if any(not isinstance(row, list) for row in matrix):
        raise FormatError("'rtt_ms' must be a list of rows")
    return validate_network([str(name) for name in nodes], matrix)


def network_to_json(network: Network) -> Dict[str, Any]:
    return {
        "format": 1,
        "nodes": list(network.node_names),
        "rtt_ms": [[format_rational(value) for value in row] for row in network.rtt],
    }


def _read_json(path: Path) -> Any:
    try:
        with open(path, encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path.name}: invalid JSON ({e})") from None


def _network_from_table(path: Path) -> Network:
    if not TABLES_AVAILABLE:
        raise FormatError("pandas and openpyxl are required for CSV/XLSX networks")
    if path.suffix.lower() == '.csv':
        df = pd.read_csv(path, index_col=0, dtype=str, keep_default_na=False)
    else:
        df = pd.read_excel(path, index_col=0, dtype=str, engine='openpyxl', keep_default_na=False)

    columns = [str(col).strip() for col in df.columns]
    rows = [str(name).strip() for name in df.index]
    if columns != rows:
        raise FormatError(f"{path.name}: header row {columns} and first column {rows} must list the same nodes")
    matrix: List[List[str]] = [[cell.strip() for cell in record] for record in df.itertuples(index=False)]
    logger.debug(f"Read {len(rows)}x{len(columns)} RTT table from {path.name}")
    return validate_network(rows, matrix)


def load_network(path: PathLike) -> Network:
    """Load a network, dispatching on the file suffix"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Network file not found: {path}")
    suffix = path.suffix.lower()
    if suffix not in SUPPORTED_EXTENSIONS:
        raise FormatError(
            f"unsupported network file type {suffix!r}; supported: {', '.join(SUPPORTED_EXTENSIONS)}"
        )
    if suffix == '.json':
        document = _read_json(path)
        # plan documents embed their network
        if isinstance(document, dict) and "network" in document and "nodes" not in document:
            document = document["network"]
        network = network_from_json(document)
    else:
        network = _network_from_table(path)
    logger.info(f"Loaded {SUPPORTED_EXTENSIONS[suffix]} {path.name} with {network.n} node(s)")
    return network


def scheme_from_document(document: Any, network: Network) -> Tuple[AnyScheme, Optional[NearestNeighborGraph]]:
    """Scheme plus the G_{k-1} variant a plan document was evaluated on (None for bare schemes)"""
    if not isinstance(document, dict):
        raise FormatError("scheme document must be a JSON object")
    if "scheme" not in document:
        return scheme_from_json(document, network), None
    scheme = scheme_from_json(document["scheme"], network)
    variant = document.get("variant")
    if not isinstance(variant, dict) or "edges" not in variant:
        return scheme, None
    try:
        edges = [(src, dst) for src, dst in variant["edges"]]
    except (TypeError, ValueError):
        raise FormatError("variant edges must be [src, dst] pairs") from None
    k = int(document.get("k", scheme.k))
    graph = graph_from_edges(network, k, edges)
    logger.debug(f"Plan document carries variant {variant.get('index')} with {len(edges)} edge(s)")
    return scheme, graph


def load_scheme(path: PathLike, network: Network) -> Tuple[AnyScheme, Optional[NearestNeighborGraph]]:
    """Load a scheme document, or the scheme and variant embedded in a plan document"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Scheme file not found: {path}")
    try:
        return scheme_from_document(_read_json(path), network)
    except FormatError as e:
        raise FormatError(f"{path.name}: {e}") from None
