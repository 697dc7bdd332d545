"""
Exact vertex coloring of extended graphs: k-colorability and chromatic number
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import TimeBudgetExceeded
from .nngraph import ExtendedGraph

logger = logging.getLogger(__name__)

DEFAULT_COLOR_BUDGET = 10**7


@dataclass(frozen=True)
class Coloring:
    colors: Tuple[int, ...]
    color_count: int

    def classes(self) -> List[FrozenSet[int]]:
        """Nodes of each color, indexed by color"""
        return [
            frozenset(v for v, c in enumerate(self.colors) if c == color)
            for color in range(self.color_count)
        ]


def is_proper(h: ExtendedGraph, colors: Sequence[int]) -> bool:
    if len(colors) != h.n:
        return False
    return all(colors[u] != colors[v] for u, v in h.edges())


def max_clique_lower_bound(h: ExtendedGraph) -> FrozenSet[int]:
    """A largest clique of h; its size bounds the chromatic number from below"""
    clique, _ = nx.max_weight_clique(h.graph, weight=None)
    return frozenset(clique) if clique else frozenset([0])


class _Search:
    """DSATUR-ordered backtracking for a fixed color budget"""

    def __init__(self, h: ExtendedGraph, k: int, budget: List[int]):
        self.h = h
        self.k = k
        self.budget = budget
        self.colors = [-1] * h.n
        # neighbor_colors[v][c]: how many colored neighbors of v use color c
        self.neighbor_colors = [[0] * k for _ in range(h.n)]
        self.degree = [len(a) for a in h.adjacency]

    def _assign(self, v: int, color: int) -> None:
        self.colors[v] = color
        for w in self.h.adjacency[v]:
            self.neighbor_colors[w][color] += 1

    def _unassign(self, v: int) -> None:
        color = self.colors[v]
        self.colors[v] = -1
        for w in self.h.adjacency[v]:
            self.neighbor_colors[w][color] -= 1

    def _saturation(self, v: int) -> int:
        return sum(1 for count in self.neighbor_colors[v] if count)

    def _pick(self) -> int:
        best, best_key = -1, None
        for v in range(self.h.n):
            if self.colors[v] != -1:
                continue
            key = (self._saturation(v), self.degree[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def run(self, seed: Sequence[int]) -> bool:
        for color, v in enumerate(seed):
            self._assign(v, color)
        return self._extend(len(seed), len(seed))

    def _extend(self, colored: int, used: int) -> bool:
        if colored == self.h.n:
            return True
        v = self._pick()
        # a fresh color is only tried once: colors beyond `used` are interchangeable
        for color in range(min(used + 1, self.k)):
            if self.neighbor_colors[v][color]:
                continue
            self.budget[0] -= 1
            if self.budget[0] < 0:
                raise TimeBudgetExceeded(
                    f"coloring search exceeded its node-expansion budget on {self.h.n} nodes"
                )
            self._assign(v, color)
            if self._extend(colored + 1, max(used, color + 1)):
                return True
            self._unassign(v)
        return False


def _ordered_clique(h: ExtendedGraph) -> List[int]:
    return sorted(max_clique_lower_bound(h))


def _k_colorable(h: ExtendedGraph, k: int, budget: List[int], clique: List[int]) -> Optional[Coloring]:
    if len(clique) > k:
        return None
    search = _Search(h, k, budget)
    if not search.run(clique):
        return None
    return Coloring(tuple(search.colors), k)


def k_colorable(h: ExtendedGraph, k: int, budget: int = DEFAULT_COLOR_BUDGET) -> Optional[Coloring]:
    """A proper coloring with at most k colors, or None when none exists"""
    if k < 1:
        raise ValueError(f"color budget must be >= 1, got {k}")
    coloring = _k_colorable(h, k, [budget], _ordered_clique(h))
    logger.debug(f"{k}-coloring of {h.n} nodes: {'found' if coloring else 'none'}")
    return coloring


def chromatic_number(h: ExtendedGraph, budget: int = DEFAULT_COLOR_BUDGET) -> Tuple[int, Coloring]:
    clique = _ordered_clique(h)
    remaining = [budget]
    for count in range(max(1, len(clique)), h.n + 1):
        coloring = _k_colorable(h, count, remaining, clique)
        if coloring is not None:
            return count, coloring
    # h.n colors always suffice
    raise AssertionError("no coloring with n colors")
