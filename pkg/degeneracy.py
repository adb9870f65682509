"""
Degeneracy, building sequences and the Lick-White edge bound.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import networkx as nx

from graph_core import Graph, bits_of, to_networkx
from lab_errors import DomainError, NotAPermutationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class DegeneracyCertificate:
    """l(G) with a building sequence attaining it.

    ordering lists vertices in building order (v1 first); back_degrees[i] is
    the degree of ordering[i] into ordering[:i].
    """

    value: int
    ordering: Tuple[int, ...]
    back_degrees: Tuple[int, ...]

    def replays_on(self, g: Graph) -> bool:
        return (
            back_degrees(g, self.ordering) == list(self.back_degrees)
            and max(self.back_degrees) == self.value
        )


def degeneracy(g: Graph) -> DegeneracyCertificate:
    """Minimum-degree peeling, smallest index first among ties."""
    alive = (1 << g.n) - 1
    peeled: List[int] = []
    peel_degrees: List[int] = []
    while alive:
        best, best_deg = -1, g.n
        for v in bits_of(alive):
            d = (g.rows[v] & alive).bit_count()
            if d < best_deg:
                best, best_deg = v, d
        peeled.append(best)
        peel_degrees.append(best_deg)
        alive &= ~(1 << best)
    ordering = tuple(reversed(peeled))
    backs = tuple(reversed(peel_degrees))
    return DegeneracyCertificate(max(backs), ordering, backs)


def _check_permutation(g: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(g.n)):
        raise NotAPermutationError(
            f"ordering {[v + 1 for v in order]} is not a permutation of 1..{g.n}"
        )


def back_degrees(g: Graph, order: Sequence[int]) -> List[int]:
    _check_permutation(g, order)
    placed = 0
    out = []
    for v in order:
        out.append((g.rows[v] & placed).bit_count())
        placed |= 1 << v
    return out


def building_sequence_degree(g: Graph, order: Sequence[int]) -> int:
    """Largest back-degree along order (0-indexed vertices)."""
    return max(back_degrees(g, order))


def is_building_sequence(g: Graph, order: Sequence[int], h: int) -> bool:
    return building_sequence_degree(g, order) <= h


def core_numbers(g: Graph) -> List[int]:
    """Core number of every vertex; the largest equals l(G)."""
    cores = nx.core_number(to_networkx(g))
    return [cores[v] for v in range(g.n)]


def lick_white_bound(n: int, k: int) -> int:
    """Most edges a k-degenerate graph on n vertices can have."""
    if not 0 <= k < n:
        raise DomainError(f"lick_white_bound needs 0 <= k < n, got k = {k}, n = {n}")
    return k * n - k * (k + 1) // 2
