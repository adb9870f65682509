"""
degenlab MCP server
===================
Exposes the lab's operations as MCP tools over stdio, so an assistant
client can generate witnesses, classify covering pairs, compute ceilings
and bound reports, and run verification sweeps.

Every tool returns a JSON string; failures come back as
{"success": false, "error": ..., "suggestion": ...}.
"""

import asyncio
import json
import logging
from contextlib import asynccontextmanager
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field
from mcp.server.fastmcp import FastMCP

from bounds import bound_report
from covering import (
    CoveringPair,
    balanced_pair,
    classify_pair,
    covering_sum_threshold,
    is_covering_sum,
    minimal_k_pair_for_sum,
    ng_range,
)
from families import family_note, parse_family, standard_family
from generator import check_trace, generate
from graph_core import read_graph, to_graph6
from harness import CHECKS, Corpus, run_check
from lab_config import config, configure_logging
from lab_errors import LabError, UsageError
from minors import MEMO, ceiling

logger = logging.getLogger("degenlab.server")


# ============================================================================
# LIFESPAN MANAGEMENT
# ============================================================================

@asynccontextmanager
async def lab_lifespan(app):
    """Share the bounded minor memo across tool calls; it is emptied on shutdown."""
    logger.info(f"degenlab server starting (minor cap {config.MINOR_CAP}, subgraph cap {config.SUBGRAPH_CAP})")
    try:
        yield {"memo": MEMO}
    finally:
        logger.info(
            f"degenlab server stopping; memo held {len(MEMO)} minor classes, {MEMO.evictions} evicted"
        )
        MEMO.clear()


mcp = FastMCP("degenlab", lifespan=lab_lifespan)


def _graph_payload(g) -> dict:
    return {
        "n": g.n,
        "m": g.m,
        "graph6": to_graph6(g).decode("ascii"),
        "edges": [[u + 1, v + 1] for u, v in g.edges()],
    }


async def _guarded(fn, *args) -> str:
    """Run a blocking lab call off the event loop and render its result or error."""
    try:
        result = await asyncio.to_thread(fn, *args)
        return json.dumps({"success": True, **result}, indent=2, default=str)
    except LabError as e:
        return json.dumps(e.to_payload(), indent=2)
    except Exception as e:
        logger.exception("tool call failed")
        return json.dumps({"success": False, "error": str(e)})


# ============================================================================
# GENERATOR AND COVERING TOOLS
# ============================================================================

class GenerateInput(BaseModel):
    """Input for the degeneracy generator."""
    model_config = ConfigDict(str_strip_whitespace=True)

    n: int = Field(..., description="Order of the graph", ge=1, le=64)
    h: int = Field(..., description="Target degeneracy, 0 <= h < n", ge=0)
    trace: bool = Field(default=False, description="Include the per-step trace")


@mcp.tool(
    name="lab_generate",
    annotations={
        "title": "Generate a graph with given degeneracy and minimal complement degeneracy",
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
async def lab_generate(params: GenerateInput) -> str:
    """Run the generator for (n, h) and return the graph, optionally with its trace."""

    def work():
        g, trace = generate(params.n, params.h)
        out = _graph_payload(g)
        if params.trace:
            out["trace"] = trace.model_dump()
            out["trace_ok"] = check_trace(trace, params.n, params.h).ok
        return out

    return await _guarded(work)


class CoverInput(BaseModel):
    """Input for the covering-pair calculus."""
    n: int = Field(..., description="Order", ge=1)
    h: Optional[int] = Field(default=None, description="Degeneracy of G")
    k: Optional[int] = Field(default=None, description="Degeneracy of the complement")
    r: Optional[int] = Field(default=None, description="Candidate degeneracy sum")


@mcp.tool(
    name="lab_cover",
    annotations={
        "title": "Classify covering pairs and covering sums",
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
async def lab_cover(params: CoverInput) -> str:
    """Classify (h, k) or r for order n; without either, report the attainable range."""

    def work():
        if params.r is not None and (params.h is not None or params.k is not None):
            raise UsageError("give either r or the pair (h, k), not both")
        threshold = covering_sum_threshold(params.n)
        out = {
            "n": params.n,
            "ng_range": list(ng_range(params.n)),
            "even_threshold": threshold.even_min,
            "odd_threshold": threshold.odd_min,
        }
        if params.h is not None or params.k is not None:
            if params.h is None or params.k is None:
                raise UsageError("h and k must be given together")
            pair = CoveringPair(h=params.h, k=params.k, n=params.n)
            out["classification"] = classify_pair(pair).model_dump()
        if params.r is not None:
            out["is_covering_sum"] = is_covering_sum(params.r, params.n)
            out["classification"] = classify_pair(balanced_pair(params.r, params.n)).model_dump()
            if out["is_covering_sum"]:
                out["minimal_k_pair"] = minimal_k_pair_for_sum(params.n, params.r).model_dump()
        return out

    return await _guarded(work)


# ============================================================================
# GRAPH ANALYSIS TOOLS
# ============================================================================

class GraphInput(BaseModel):
    """A graph as graph6 text or an edge list ('n m' then 1-indexed 'u v' lines)."""
    model_config = ConfigDict(str_strip_whitespace=True)

    graph: str = Field(..., description="graph6 record or edge-list text", min_length=1)


@mcp.tool(
    name="lab_analyze",
    annotations={
        "title": "Lower bounds on the Colin de Verdiere parameter nu",
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
async def lab_analyze(params: GraphInput) -> str:
    """Return the full bound report for a graph."""
    return await _guarded(lambda: bound_report(read_graph(params.graph)).model_dump(mode="json"))


class CeilingInput(GraphInput):
    param: str = Field(default="delta", description="delta, kappa or d")


@mcp.tool(
    name="lab_ceiling",
    annotations={
        "title": "Minor-monotone ceiling with witness",
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
async def lab_ceiling(params: CeilingInput) -> str:
    """Exact ceiling of delta, kappa or average degree over all minors, with the witness ops."""

    def work():
        result = ceiling(read_graph(params.graph), params.param)
        out = result.describe()
        out["witness_graph6"] = to_graph6(result.witness).decode("ascii")
        return out

    return await _guarded(work)


class ConstructInput(BaseModel):
    family: str = Field(..., description="e.g. 'path:4', 'matula:2', 'ceiling-counterexample'")


@mcp.tool(
    name="lab_construct",
    annotations={
        "title": "Build a named graph",
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
async def lab_construct(params: ConstructInput) -> str:
    """Build a graph from a family spec."""

    def work():
        spec = parse_family(params.family)
        out = _graph_payload(standard_family(spec))
        out["note"] = family_note(spec)
        return out

    return await _guarded(work)


# ============================================================================
# VERIFICATION TOOLS
# ============================================================================

class VerifyInput(BaseModel):
    check: str = Field(..., description=f"One of: {', '.join(CHECKS)}")
    n_max: int = Field(default=5, description="Largest order (or generator cell order)", ge=1, le=12)


@mcp.tool(
    name="lab_verify",
    annotations={
        "title": "Run a verification sweep",
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
async def lab_verify(params: VerifyInput) -> str:
    """Run one check over all graphs up to n_max and return its report."""
    return await _guarded(
        lambda: run_check(params.check, Corpus.up_to(params.n_max)).model_dump(mode="json")
    )


if __name__ == "__main__":
    configure_logging()
    # stdio only: the lab never opens network listeners
    mcp.run()
