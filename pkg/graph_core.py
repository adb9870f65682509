"""
Graph core
==========
Immutable simple undirected graphs stored as adjacency bitmask rows, the
three minor operations, exact connectivity and girth, isomorphism through
pynauty certificates, and graph6 / edge-list / DOT text formats.

Vertices are 0-indexed here; every text format and report is 1-indexed.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import pynauty

from lab_config import config
from lab_errors import InvalidOperandError, MalformedInputError, SizeLimitError

logger = logging.getLogger(__name__)

MAX_ORDER = 64

# Girth of an acyclic graph.
GIRTH_INFINITE = math.inf

Girth = Union[int, float]


# ============================================================================
# GRAPH VALUE
# ============================================================================

@dataclass(frozen=True, slots=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    rows[i] has bit j set iff i and j are adjacent.
    """

    n: int
    rows: Tuple[int, ...]
    m: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ORDER:
            raise InvalidOperandError(f"graph order must be in 1..{MAX_ORDER}, got {self.n}")
        if len(self.rows) != self.n:
            raise InvalidOperandError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full or row >> i & 1:
                raise InvalidOperandError(f"row {i + 1} has a loop or an out-of-range neighbour")
            bits = row
            while bits:
                low = bits & -bits
                j = low.bit_length() - 1
                if not self.rows[j] >> i & 1:
                    raise InvalidOperandError(f"adjacency is not symmetric at ({i + 1}, {j + 1})")
                bits ^= low
        object.__setattr__(self, "m", sum(r.bit_count() for r in self.rows) // 2)

    @classmethod
    def _trusted(cls, n: int, rows: Tuple[int, ...]) -> "Graph":
        """Build without validation; rows must already be symmetric and loop-free."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        object.__setattr__(g, "m", sum(r.bit_count() for r in rows) // 2)
        return g

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> List[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v: int) -> List[int]:
        return bits_of(self.rows[v])

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        out = []
        for u, row in enumerate(self.rows):
            out.extend((u, v) for v in bits_of(row >> (u + 1) << (u + 1)))
        return out


def bits_of(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _drop_bit(mask: int, v: int) -> int:
    return (mask & ((1 << v) - 1)) | ((mask >> (v + 1)) << v)


def from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """Graph on n vertices from 0-indexed edges."""
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise InvalidOperandError(f"edge ({u + 1}, {v + 1}) is not valid on {n} vertices")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph._trusted(g.n, tuple((full ^ row) & ~(1 << i) for i, row in enumerate(g.rows)))


def induced_subgraph(g: Graph, vertices: Union[int, Sequence[int]]) -> Graph:
    """Induced subgraph on a vertex bitmask or index list, relabelled in index order."""
    keep = bits_of(vertices) if isinstance(vertices, int) else sorted(set(vertices))
    if not keep:
        raise InvalidOperandError("induced subgraph needs at least one vertex")
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for w in bits_of(g.rows[v]):
            if w in index:
                row |= 1 << index[w]
        rows.append(row)
    return Graph._trusted(len(keep), tuple(rows))


@dataclass(frozen=True, slots=True)
class DegreeStats:
    min_degree: int
    max_degree: int
    avg_degree: Fraction
    size: int


def degree_stats(g: Graph) -> DegreeStats:
    degs = g.degrees()
    return DegreeStats(min(degs), max(degs), Fraction(2 * g.m, g.n), g.m)


# ============================================================================
# MINOR OPERATIONS
# ============================================================================

class MinorKind(str, Enum):
    DELETE_VERTEX = "delete-vertex"
    DELETE_EDGE = "delete-edge"
    CONTRACT_EDGE = "contract-edge"


@dataclass(frozen=True, slots=True)
class MinorOp:
    """One minor operation; operands are 0-indexed."""

    kind: MinorKind
    operands: Tuple[int, ...]

    def describe(self) -> Dict[str, object]:
        return {"kind": self.kind.value, "operands": [v + 1 for v in self.operands]}


def delete_vertex(g: Graph, v: int) -> Graph:
    return Graph._trusted(
        g.n - 1, tuple(_drop_bit(row, v) for i, row in enumerate(g.rows) if i != v)
    )


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph._trusted(g.n, tuple(rows))


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge v into u (u < v keeps the smaller index) and compact."""
    if u > v:
        u, v = v, u
    rows = list(g.rows)
    merged = (rows[u] | rows[v]) & ~(1 << u) & ~(1 << v)
    rows[u] = merged
    for w in range(g.n):
        if w in (u, v):
            continue
        if merged >> w & 1:
            rows[w] = (rows[w] | (1 << u)) & ~(1 << v)
        else:
            rows[w] &= ~(1 << v)
    del rows[v]
    return Graph._trusted(g.n - 1, tuple(_drop_bit(row, v) for row in rows))


def apply_minor_op(g: Graph, op: MinorOp) -> Graph:
    """Apply one minor operation, validating its operands against g."""
    if op.kind is MinorKind.DELETE_VERTEX:
        if len(op.operands) != 1 or not 0 <= op.operands[0] < g.n:
            raise InvalidOperandError(f"delete-vertex operand {op.operands} out of range for n = {g.n}")
        if g.n < 2:
            raise InvalidOperandError("cannot delete the only vertex of a graph")
        return delete_vertex(g, op.operands[0])
    if len(op.operands) != 2:
        raise InvalidOperandError(f"{op.kind.value} needs a vertex pair, got {op.operands}")
    u, v = op.operands
    if not (0 <= u < g.n and 0 <= v < g.n) or u == v or not g.has_edge(u, v):
        raise InvalidOperandError(f"({u + 1}, {v + 1}) is not an edge of the graph")
    if op.kind is MinorKind.DELETE_EDGE:
        return delete_edge(g, u, v)
    return contract_edge(g, u, v)


def replay(g: Graph, ops: Sequence[MinorOp]) -> Graph:
    for op in ops:
        g = apply_minor_op(g, op)
    return g


# ============================================================================
# CONNECTIVITY AND GIRTH
# ============================================================================

def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_networkx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return from_edges(h.number_of_nodes(), h.edges())


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in bits_of(frontier):
            reach |= g.rows[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity; 0 for K1 and disconnected graphs, n-1 for K_n."""
    if g.n == 1 or not is_connected(g):
        return 0
    if g.m == g.n * (g.n - 1) // 2:
        return g.n - 1
    return nx.node_connectivity(to_networkx(g))


def girth(g: Graph) -> Girth:
    """Length of a shortest cycle, GIRTH_INFINITE for forests."""
    value = nx.girth(to_networkx(g))
    return GIRTH_INFINITE if math.isinf(value) else int(value)


def has_four_cycle(g: Graph) -> bool:
    """True iff g contains C4 (two vertices with two common neighbours)."""
    return any(
        (g.rows[u] & g.rows[v]).bit_count() >= 2
        for u in range(g.n)
        for v in range(u + 1, g.n)
    )


# ============================================================================
# ISOMORPHISM
# ============================================================================

def _nauty(g: Graph) -> pynauty.Graph:
    return pynauty.Graph(
        g.n, directed=False, adjacency_dict={v: g.neighbors(v) for v in range(g.n)}
    )


@lru_cache(maxsize=200_000)
def certificate(g: Graph) -> Tuple[int, bytes]:
    """Isomorphism-invariant key: equal keys iff isomorphic graphs."""
    return g.n, pynauty.certificate(_nauty(g))


def canonical_form(g: Graph) -> Graph:
    """Relabel g so that isomorphic graphs become identical."""
    labels = pynauty.canon_label(_nauty(g))
    rows = []
    for i in range(g.n):
        row = 0
        for j in range(g.n):
            if g.has_edge(labels[i], labels[j]):
                row |= 1 << j
        rows.append(row)
    return Graph._trusted(g.n, tuple(rows))


def is_isomorphic(g: Graph, h: Graph, cap: Optional[int] = None) -> bool:
    cap = config.ISO_CAP if cap is None else cap
    for x in (g, h):
        if x.n > cap:
            raise SizeLimitError("isomorphism test", x.n, cap)
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return certificate(g) == certificate(h)


# ============================================================================
# GRAPH6
# ============================================================================

def _graph6_order(data: bytes) -> Tuple[int, int]:
    """Decode the order header; returns (n, header length)."""
    if not data:
        raise MalformedInputError("empty graph6 record", offset=0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) < 4:
        raise MalformedInputError("truncated extended graph6 header", offset=len(data))
    if data[1] == 126:
        raise MalformedInputError(f"graph6 order exceeds {MAX_ORDER}", offset=1)
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6(text: Union[bytes, str]) -> Graph:
    """Decode one graph6 record (an optional '>>graph6<<' prefix is accepted)."""
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(b">>graph6<<"):
        data = data[10:]
        base = 10
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise MalformedInputError(f"byte {c!r} outside the graph6 range 63..126", offset=base + i)
    n, head = _graph6_order(data)
    if not 1 <= n <= MAX_ORDER:
        raise MalformedInputError(f"graph6 order {n} outside 1..{MAX_ORDER}", offset=base)
    if head == 4 and n <= 62:
        raise MalformedInputError("extended header used for an order below 63", offset=base)
    bits = n * (n - 1) // 2
    expected = head + (bits + 5) // 6
    if len(data) != expected:
        raise MalformedInputError(
            f"graph6 record for n = {n} needs {expected} bytes, got {len(data)}",
            offset=base + min(len(data), expected),
        )
    pad = (6 - bits % 6) % 6
    if pad and (data[-1] - 63) & ((1 << pad) - 1):
        raise MalformedInputError("non-zero padding bits", offset=base + len(data) - 1)
    return from_networkx(nx.from_graph6_bytes(data))


def to_graph6(g: Graph) -> bytes:
    return nx.to_graph6_bytes(to_networkx(g), header=False).rstrip(b"\n")


# ============================================================================
# EDGE LIST AND DOT
# ============================================================================

def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse 'n m' followed by m lines 'u v' (1-indexed)."""
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise MalformedInputError("empty edge list", line=1)
    no, head = lines[0]
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise MalformedInputError("edge list header must be 'n m'", line=no) from None
    if not 1 <= n <= MAX_ORDER:
        raise MalformedInputError(f"order {n} outside 1..{MAX_ORDER}", line=no)
    if len(lines) - 1 != m:
        raise MalformedInputError(f"header declares {m} edges, found {len(lines) - 1}", line=no)
    rows = [0] * n
    for no, parts in lines[1:]:
        try:
            u, v = (int(x) - 1 for x in parts)
        except ValueError:
            raise MalformedInputError("edge lines must be 'u v'", line=no) from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise MalformedInputError(f"invalid edge {u + 1} {v + 1}", line=no)
        if rows[u] >> v & 1:
            raise MalformedInputError(f"duplicate edge {u + 1} {v + 1}", line=no)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v + 1};" for v in range(g.n))
    lines.extend(f"  {u + 1} -- {v + 1};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def looks_like_graph6(line: str) -> bool:
    data = line.strip().encode("ascii", "replace")
    if data.startswith(b">>graph6<<"):
        return True
    if not data or data[0] < 63 or any(not 63 <= c <= 126 for c in data):
        return False
    try:
        n, head = _graph6_order(data)
    except MalformedInputError:
        return False
    return len(data) == head + (n * (n - 1) // 2 + 5) // 6


def read_graph(text: str) -> Graph:
    """Read one graph, auto-detecting graph6 versus edge-list text."""
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    if looks_like_graph6(first):
        return parse_graph6(first.strip())
    if first[:1].isdigit():
        return parse_edge_list(text)
    # Neither format matched; report it as graph6 so the offset is useful.
    return parse_graph6(first.strip())


def format_graph(g: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return to_graph6(g).decode("ascii") + "\n"
    if fmt == "edges":
        return to_edge_list(g)
    if fmt == "dot":
        return to_dot(g)
    raise InvalidOperandError(f"unknown graph format '{fmt}'")
