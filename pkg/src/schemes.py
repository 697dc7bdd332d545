"""
Storage schemes: uncoded file assignments and scalar linear codes over GF(p)
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from .errors import FormatError, NotPrime, RankDeficient
from .network import Network

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldSpec:
    """Prime field GF(p); sub-packetization is fixed at one symbol per node"""

    p: int = 2

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or not galois.is_prime(self.p):
            raise NotPrime(f"field characteristic must be prime, got {self.p!r}")

    @cached_property
    def GF(self):
        return galois.GF(self.p)

    def array(self, values) -> galois.FieldArray:
        return self.GF(np.asarray(values, dtype=np.int64) % self.p)

    def __str__(self) -> str:
        return f"GF({self.p})"


@dataclass(frozen=True)
class UncodedScheme:
    """assignment[i] is the (1-based) file stored at node i"""

    assignment: Tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        for i, f in enumerate(self.assignment):
            if not 1 <= f <= self.k:
                raise ValueError(f"node {i} stores file {f}, outside 1..{self.k}")

    @property
    def n(self) -> int:
        return len(self.assignment)

    def holders(self, j: int) -> Tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.assignment) if f == j)

    def formula(self, i: int) -> str:
        return f"W{self.assignment[i]}"


def _rank(matrix: galois.FieldArray) -> int:
    return int(np.linalg.matrix_rank(matrix))


@dataclass(frozen=True)
class LinearScheme:
    """k x n generator over the field; column i is what node i stores"""

    field: FieldSpec
    generator: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = len(self.generator)
        if rows < 1:
            raise FormatError("generator needs at least one row")
        width = len(self.generator[0])
        if width < 1 or any(len(row) != width for row in self.generator):
            raise FormatError("generator rows must have equal, non-zero length")
        if any(not 0 <= value < self.field.p for row in self.generator for value in row):
            raise FormatError(f"generator entries must lie in 0..{self.field.p - 1}")
        rank = _rank(self.matrix())
        if rank != rows:
            raise RankDeficient(f"generator has rank {rank}, need k={rows}")

    @classmethod
    def create(cls, field: FieldSpec, generator: Sequence[Sequence[int]]) -> "LinearScheme":
        return cls(field, tuple(tuple(int(v) % field.p for v in row) for row in generator))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence[int]]) -> "LinearScheme":
        k = len(columns[0])
        return cls.create(field, [[column[r] for column in columns] for r in range(k)])

    @property
    def k(self) -> int:
        return len(self.generator)

    @property
    def n(self) -> int:
        return len(self.generator[0])

    def matrix(self) -> galois.FieldArray:
        return self.field.array(self.generator)

    def column(self, i: int) -> Tuple[int, ...]:
        return tuple(row[i] for row in self.generator)

    def columns(self, nodes: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
        return tuple(self.column(i) for i in nodes)

    def formula(self, i: int) -> str:
        """Human-readable content of node i, e.g. 'W1+W2+W4' or '2*W1+W3'"""
        terms = []
        for j, coefficient in enumerate(self.column(i), start=1):
            if coefficient == 1:
                terms.append(f"W{j}")
            elif coefficient:
                terms.append(f"{coefficient}*W{j}")
        return "+".join(terms) if terms else "0"

    def encode(self, messages: Sequence[int]) -> Tuple[int, ...]:
        """Stored symbols X^T = W^T G for one message symbol per file"""
        if len(messages) != self.k:
            raise ValueError(f"expected {self.k} message symbols, got {len(messages)}")
        stored = self.field.array(messages) @ self.matrix()
        return tuple(int(x) for x in stored)


def uncoded_as_linear(s: UncodedScheme, field: FieldSpec, k: int) -> LinearScheme:
    """Unit-vector generator of an uncoded assignment"""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    missing = sorted(set(range(1, k + 1)) - set(s.assignment))
    if missing:
        raise RankDeficient(f"file(s) {missing} stored nowhere")
    columns = [[1 if f == j else 0 for j in range(1, k + 1)] for f in s.assignment]
    return LinearScheme.from_columns(field, columns)


def solve_decode(
    generator_columns: Sequence[Sequence[int]], j: int, field: FieldSpec
) -> Optional[Tuple[int, ...]]:
    """Coefficients v with G_S v = e_j, or None when W_j is outside the span of G_S"""
    if not generator_columns:
        return None
    k = len(generator_columns[0])
    s = len(generator_columns)
    target = np.zeros((k, 1), dtype=np.int64)
    target[j - 1, 0] = 1
    augmented = field.array(np.hstack([np.asarray(generator_columns, dtype=np.int64).T, target]))
    echelon = augmented.row_reduce()

    # rank([G_S | e_j]) == rank(G_S) iff no pivot falls in the target column
    solution = [0] * s
    for row in echelon:
        nonzero = np.flatnonzero(np.asarray(row))
        if nonzero.size == 0:
            continue
        pivot = int(nonzero[0])
        if pivot == s:
            return None
        solution[pivot] = int(row[s])
    return tuple(solution)


AnyScheme = Union[UncodedScheme, LinearScheme]


def scheme_to_json(scheme: AnyScheme, network: Network) -> Dict[str, Any]:
    if isinstance(scheme, UncodedScheme):
        return {
            "format": 1,
            "type": "uncoded",
            "k": scheme.k,
            "assignment": {network.name(i): f for i, f in enumerate(scheme.assignment)},
        }
    return {
        "format": 1,
        "type": "linear",
        "field": scheme.field.p,
        "nodes": list(network.node_names),
        "generator": [list(row) for row in scheme.generator],
        "formulas": {network.name(i): scheme.formula(i) for i in range(scheme.n)},
    }


def scheme_from_json(document: Dict[str, Any], network: Network) -> AnyScheme:
    kind = document.get("type")
    try:
        if kind == "uncoded":
            raw = document["assignment"]
            if isinstance(raw, dict):
                assignment = [None] * network.n
                for name, f in raw.items():
                    assignment[network.index(name)] = int(f)
                if any(f is None for f in assignment):
                    unset = [network.name(i) for i, f in enumerate(assignment) if f is None]
                    raise FormatError(f"assignment missing node(s): {', '.join(unset)}")
            else:
                assignment = [int(f) for f in raw]
            if len(assignment) != network.n:
                raise FormatError(f"assignment covers {len(assignment)} nodes, network has {network.n}")
            k = int(document.get("k", max(assignment)))
            return UncodedScheme(tuple(assignment), k)
        if kind == "linear":
            field = FieldSpec(int(document.get("field", 2)))
            generator = document["generator"]
            nodes = document.get("nodes")
            if nodes is not None and list(nodes) != list(network.node_names):
                # reorder columns to the network's node order
                order = [list(nodes).index(name) for name in network.node_names]
                generator = [[row[c] for c in order] for row in generator]
            scheme = LinearScheme.create(field, generator)
            if scheme.n != network.n:
                raise FormatError(f"generator has {scheme.n} columns, network has {network.n} nodes")
            return scheme
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed {kind} scheme document: {e}") from None
    raise FormatError(f"unknown scheme type: {kind!r}")
