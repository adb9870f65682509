"""
Minor and subgraph oracles
==========================
Exact, exponential searches over the minor lattice and the induced-subgraph
lattice of small graphs:

- ceiling(G, param): maximum of delta, kappa, avg-degree (or the internal
  clique number) over all minors of G, with a replayable witness
- max_subgraph_connectivity / mader_subgraph_search: k-connected induced subgraphs
- chromatic_number, independence_number, hadwiger_number

Minor values are memoised on pynauty certificates, so each isomorphism class
of minor is evaluated once per process.
"""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple, Union

import networkx as nx

from degeneracy import degeneracy
from graph_core import (
    Graph,
    MinorKind,
    MinorOp,
    bits_of,
    certificate,
    complement,
    contract_edge,
    delete_edge,
    delete_vertex,
    induced_subgraph,
    replay,
    to_networkx,
    vertex_connectivity,
)
from lab_config import config
from lab_errors import InvalidOperandError, SizeLimitError

logger = logging.getLogger(__name__)

Value = Union[int, Fraction]


# ============================================================================
# PARAMETERS
# ============================================================================

def clique_number(g: Graph) -> int:
    if g.m == 0:
        return 1
    _, size = nx.max_weight_clique(to_networkx(g), weight=None)
    return size


def _minor_edge_cap(g: Graph) -> int:
    """Largest k with k + 1 <= n and k(k+1)/2 <= m: no minor has minimum degree above it."""
    k = 0
    while k + 2 <= g.n and (k + 1) * (k + 2) // 2 <= g.m:
        k += 1
    return k


def _avg_degree_cap(g: Graph) -> Fraction:
    return max(Fraction(2 * min(g.m, s * (s - 1) // 2), s) for s in range(1, g.n + 1))


@dataclass(frozen=True)
class Param:
    name: str
    evaluate: Callable[[Graph], Value]
    upper: Callable[[Graph], Value]


PARAMS: Dict[str, Param] = {
    "delta": Param("delta", lambda g: min(g.degrees()), _minor_edge_cap),
    "kappa": Param("kappa", vertex_connectivity, _minor_edge_cap),
    "avg-degree": Param("avg-degree", lambda g: Fraction(2 * g.m, g.n), _avg_degree_cap),
    "clique": Param("clique", clique_number, lambda g: _minor_edge_cap(g) + 1),
}

# CLI spellings
PARAM_ALIASES = {"d": "avg-degree", "avg": "avg-degree", "eta": "clique"}


def resolve_param(name: str) -> Param:
    key = PARAM_ALIASES.get(name, name)
    if key not in PARAMS:
        raise InvalidOperandError(
            f"unknown parameter '{name}'",
            f"Use one of: {', '.join(['delta', 'kappa', 'd'])}",
        )
    return PARAMS[key]


# ============================================================================
# MEMO
# ============================================================================

class MinorMemo:
    """Thread-safe insert-or-get table keyed on (parameter, certificate).

    Holds at most max_entries values; the oldest insertions are evicted first.
    """

    def __init__(self, max_entries: Optional[int] = None):
        self._values: Dict[Tuple[str, Tuple[int, bytes]], Value] = {}
        self._lock = threading.Lock()
        self.max_entries = config.MEMO_MAX if max_entries is None else max_entries
        self.evictions = 0
        self.hits = 0
        self.misses = 0

    def get(self, key) -> Optional[Value]:
        with self._lock:
            value = self._values.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def put(self, key, value: Value) -> Value:
        with self._lock:
            if key in self._values:
                return self._values[key]
            while self._values and len(self._values) >= self.max_entries:
                del self._values[next(iter(self._values))]
                self.evictions += 1
            self._values[key] = value
            return value

    def clear(self) -> None:
        with self._lock:
            self._values.clear()
            self.hits = self.misses = self.evictions = 0

    def __len__(self) -> int:
        return len(self._values)


MEMO = MinorMemo()


# ============================================================================
# MINOR CEILINGS
# ============================================================================

def minor_children(g: Graph) -> Iterator[Tuple[MinorOp, Graph]]:
    """One-step minors in a fixed order: vertex deletions, edge deletions, contractions."""
    if g.n >= 2:
        for v in range(g.n):
            yield MinorOp(MinorKind.DELETE_VERTEX, (v,)), delete_vertex(g, v)
    edges = g.edges()
    for u, v in edges:
        yield MinorOp(MinorKind.DELETE_EDGE, (u, v)), delete_edge(g, u, v)
    for u, v in edges:
        yield MinorOp(MinorKind.CONTRACT_EDGE, (u, v)), contract_edge(g, u, v)


def _ceiling_value(g: Graph, param: Param, memo: MinorMemo) -> Value:
    key = (param.name, certificate(g))
    cached = memo.get(key)
    if cached is not None:
        return cached
    best = param.evaluate(g)
    cap = param.upper(g)
    if best < cap:
        seen: Set[Tuple[int, bytes]] = set()
        for _, child in minor_children(g):
            cert = certificate(child)
            if cert in seen:
                continue
            seen.add(cert)
            best = max(best, _ceiling_value(child, param, memo))
            if best >= cap:
                break
    return memo.put(key, best)


@dataclass(frozen=True)
class CeilingWitness:
    """Ceiling value plus the minor operations that reach a minor attaining it."""

    param: str
    value: Value
    ops: Tuple[MinorOp, ...]
    witness: Graph

    def replays_from(self, g: Graph) -> bool:
        reached = replay(g, self.ops)
        return reached == self.witness and PARAMS[self.param].evaluate(reached) == self.value

    def describe(self) -> Dict[str, object]:
        return {
            "param": self.param,
            "value": str(self.value),
            "value_float": float(self.value),
            "ops": [op.describe() for op in self.ops],
            "witness_n": self.witness.n,
            "witness_m": self.witness.m,
        }


def _check_cap(what: str, g: Graph, cap: Optional[int], default: int) -> None:
    cap = default if cap is None else cap
    if g.n > cap:
        raise SizeLimitError(what, g.n, cap)


def ceiling(
    g: Graph,
    param: str = "delta",
    cap: Optional[int] = None,
    memo: Optional[MinorMemo] = None,
) -> CeilingWitness:
    """Maximum of param over all minors of g, with a witness minor."""
    p = resolve_param(param)
    _check_cap(f"{p.name} ceiling", g, cap, config.MINOR_CAP)
    memo = MEMO if memo is None else memo
    value = _ceiling_value(g, p, memo)

    ops: List[MinorOp] = []
    current = g
    while p.evaluate(current) != value:
        for op, child in minor_children(current):
            if _ceiling_value(child, p, memo) == value:
                ops.append(op)
                current = child
                break
        else:
            raise RuntimeError(f"no child of a minor keeps the {p.name} ceiling {value}")
    logger.debug(f"{p.name} ceiling {value} on n={g.n}, memo size {len(memo)}, hits {memo.hits}")
    return CeilingWitness(p.name, value, tuple(ops), current)


def hadwiger_number(g: Graph, cap: Optional[int] = None) -> int:
    """Largest t with K_t a minor of g."""
    return int(ceiling(g, "clique", cap=cap).value)


# ============================================================================
# K-CONNECTED SUBGRAPHS
# ============================================================================

@dataclass(frozen=True)
class SubgraphWitness:
    vertices: Tuple[int, ...]
    graph: Graph


def _k_core(g: Graph, mask: int, k: int) -> int:
    changed = True
    while changed and mask:
        changed = False
        for v in bits_of(mask):
            if (g.rows[v] & mask).bit_count() < k:
                mask &= ~(1 << v)
                changed = True
    return mask


def _components(g: Graph, mask: int) -> List[int]:
    comps = []
    rest = mask
    while rest:
        seen = frontier = rest & -rest
        while frontier:
            reach = 0
            for v in bits_of(frontier):
                reach |= g.rows[v]
            frontier = reach & mask & ~seen
            seen |= frontier
        comps.append(seen)
        rest &= ~seen
    return comps


def _search(g: Graph, mask: int, k: int, visited: Set[int]) -> Optional[int]:
    mask = _k_core(g, mask, k)
    if mask.bit_count() < k + 1 or mask in visited:
        return None
    visited.add(mask)
    comps = _components(g, mask)
    if len(comps) > 1:
        for comp in comps:
            found = _search(g, comp, k, visited)
            if found is not None:
                return found
        return None
    sub = induced_subgraph(g, mask)
    if vertex_connectivity(sub) >= k:
        return mask
    # A k-connected subgraph survives any smaller separator inside one side.
    local = bits_of(mask)
    cut = 0
    for v in nx.minimum_node_cut(to_networkx(sub)):
        cut |= 1 << local[v]
    for comp in _components(g, mask & ~cut):
        found = _search(g, comp | cut, k, visited)
        if found is not None:
            return found
    return None


def mader_subgraph_search(g: Graph, k: int, cap: Optional[int] = None) -> Optional[SubgraphWitness]:
    """An induced subgraph with connectivity >= k, or None if there is none."""
    _check_cap("k-connected subgraph search", g, cap, config.SUBGRAPH_CAP)
    if k <= 0:
        return SubgraphWitness((0,), induced_subgraph(g, 1))
    found = _search(g, (1 << g.n) - 1, k, set())
    if found is None:
        return None
    return SubgraphWitness(tuple(bits_of(found)), induced_subgraph(g, found))


def max_subgraph_connectivity(g: Graph, cap: Optional[int] = None) -> int:
    """Largest connectivity of an induced subgraph (edge deletions never raise it)."""
    _check_cap("subgraph connectivity", g, cap, config.SUBGRAPH_CAP)
    for k in range(degeneracy(g).value, 0, -1):
        if mader_subgraph_search(g, k, cap) is not None:
            return k
    return 0


# ============================================================================
# CHROMATIC AND INDEPENDENCE NUMBERS
# ============================================================================

def _colourable(g: Graph, order: List[int], k: int) -> bool:
    colour = [-1] * g.n

    def place(idx: int, used: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        forbidden = {colour[w] for w in bits_of(g.rows[v])}
        for c in range(used):
            if c not in forbidden:
                colour[v] = c
                if place(idx + 1, used):
                    return True
        if used < k:
            colour[v] = used
            if place(idx + 1, used + 1):
                return True
        colour[v] = -1
        return False

    return place(0, 0)


def chromatic_number(g: Graph, cap: Optional[int] = None) -> int:
    """Exact chi by backtracking k-colouring, k counted up from the clique number."""
    _check_cap("chromatic number", g, cap, config.SUBGRAPH_CAP)
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    k = clique_number(g)
    while not _colourable(g, order, k):
        k += 1
    return k


def independence_number(g: Graph, cap: Optional[int] = None) -> int:
    _check_cap("independence number", g, cap, config.SUBGRAPH_CAP)
    return clique_number(complement(g))


@dataclass(frozen=True)
class ExactParams:
    chi: int
    alpha: int
    eta: Optional[int]


def exact_parameters(g: Graph) -> ExactParams:
    """chi and alpha up to the subgraph cap; eta is None above the minor cap."""
    return ExactParams(
        chi=chromatic_number(g),
        alpha=independence_number(g),
        eta=hadwiger_number(g) if g.n <= config.MINOR_CAP else None,
    )
