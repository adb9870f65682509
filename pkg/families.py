"""
Named graphs and families: paths, cycles, complete and complete bipartite
graphs, edgeless graphs, the Matula self-complementary family and the
8-vertex minor-ceiling counterexample.
"""

import logging
from typing import Callable, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from graph_core import Graph, complete_graph, empty_graph, from_edges, MAX_ORDER
from lab_errors import InvalidParamsError, SizeLimitError

logger = logging.getLogger(__name__)

# Arity of each family token.
FAMILY_ARITY: Dict[str, int] = {
    "path": 1,
    "cycle": 1,
    "complete": 1,
    "complete-bipartite": 2,
    "empty": 1,
    "matula": 1,
    "ceiling-counterexample": 0,
}

# Alternate tokens accepted by parse_family.
FAMILY_ALIASES: Dict[str, str] = {
    "figure1": "ceiling-counterexample",
}


class FamilySpec(BaseModel):
    """A named family and its integer parameters."""
    model_config = ConfigDict(str_strip_whitespace=True, frozen=True)

    kind: str = Field(..., description="Family token, e.g. 'path' or 'matula'")
    params: List[int] = Field(default_factory=list, description="Family parameters, all >= 1")

    @field_validator("kind")
    @classmethod
    def known_kind(cls, v: str) -> str:
        v = v.lower()
        v = FAMILY_ALIASES.get(v, v)
        if v not in FAMILY_ARITY:
            raise ValueError(f"unknown family '{v}'; known: {', '.join(FAMILY_ARITY)}")
        return v


def parse_family(text: str) -> FamilySpec:
    """Parse 'kind' or 'kind:p1,p2' into a FamilySpec."""
    kind, _, rest = text.strip().partition(":")
    try:
        params = [int(p) for p in rest.split(",")] if rest else []
        return FamilySpec(kind=kind, params=params)
    except ValidationError as e:
        reason = "; ".join(err["msg"].removeprefix("Value error, ") for err in e.errors())
        raise InvalidParamsError(f"cannot parse family spec '{text}': {reason}") from None
    except ValueError as e:
        raise InvalidParamsError(f"cannot parse family spec '{text}': {e}") from None


# ============================================================================
# CONSTRUCTORS
# ============================================================================

def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParamsError(f"a cycle needs at least 3 vertices, got {n}")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def matula(s: int) -> Graph:
    """P4 with both end vertices blown up to K_s and both inner vertices to s independent vertices.

    Blocks are laid out block-major: K_s, independent, independent, K_s.
    """
    if s < 1:
        raise InvalidParamsError(f"matula needs s >= 1, got {s}")
    if 4 * s > MAX_ORDER:
        raise SizeLimitError("matula family", 4 * s, MAX_ORDER)
    blocks = [range(b * s, (b + 1) * s) for b in range(4)]
    edges: List[Tuple[int, int]] = []
    for block in (blocks[0], blocks[3]):
        edges.extend((u, v) for u in block for v in block if u < v)
    for left, right in zip(blocks, blocks[1:]):
        edges.extend((u, v) for u in left for v in right)
    return from_edges(4 * s, edges)


# Vertex labels a..h map to 0..7. The long horizontal segment d-h passes
# through f and is read as the two edges d-f and f-h.
CEILING_COUNTEREXAMPLE_LABELS = "abcdefgh"
CEILING_COUNTEREXAMPLE_EDGES = (
    "ab", "ac", "ae", "ag", "bd", "bf", "bh",
    "cd", "cg", "df", "ef", "fh", "gh",
)
CEILING_COUNTEREXAMPLE_NOTE = "reconstructed from a drawing: collinear segment d-h read as d-f and f-h"


def ceiling_counterexample() -> Graph:
    """8-vertex graph whose minimum-degree ceiling is 4 on both it and its complement."""
    index = {c: i for i, c in enumerate(CEILING_COUNTEREXAMPLE_LABELS)}
    return from_edges(8, [(index[e[0]], index[e[1]]) for e in CEILING_COUNTEREXAMPLE_EDGES])


_BUILDERS: Dict[str, Callable[..., Graph]] = {
    "path": path,
    "cycle": cycle,
    "complete": complete_graph,
    "complete-bipartite": complete_bipartite,
    "empty": empty_graph,
    "matula": matula,
    "ceiling-counterexample": ceiling_counterexample,
}


def standard_family(spec: FamilySpec) -> Graph:
    """Build the graph named by spec with conventional vertex ordering."""
    arity = FAMILY_ARITY[spec.kind]
    if len(spec.params) != arity:
        raise InvalidParamsError(f"'{spec.kind}' takes {arity} parameter(s), got {len(spec.params)}")
    if any(p < 1 for p in spec.params):
        raise InvalidParamsError(f"family parameters must be >= 1, got {spec.params}")
    if spec.kind != "matula" and sum(spec.params) > MAX_ORDER:
        raise SizeLimitError(spec.kind, sum(spec.params), MAX_ORDER)
    logger.debug(f"building family {spec.kind}{spec.params}")
    return _BUILDERS[spec.kind](*spec.params)


def family_note(spec: FamilySpec) -> str:
    return CEILING_COUNTEREXAMPLE_NOTE if spec.kind == "ceiling-counterexample" else ""
