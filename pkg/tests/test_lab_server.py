import asyncio
import json

from families import cycle
from lab_server import (
    CeilingInput,
    ConstructInput,
    CoverInput,
    GenerateInput,
    GraphInput,
    VerifyInput,
    lab_analyze,
    lab_ceiling,
    lab_construct,
    lab_cover,
    lab_generate,
    lab_lifespan,
    lab_verify,
    mcp,
)
from minors import MEMO, ceiling


def _call(tool, params) -> dict:
    return json.loads(asyncio.run(tool(params)))


def test_tools_are_registered() -> None:
    names = {tool.name for tool in asyncio.run(mcp.list_tools())}
    assert names == {"lab_generate", "lab_cover", "lab_analyze", "lab_ceiling", "lab_construct", "lab_verify"}


def test_generate() -> None:
    out = _call(lab_generate, GenerateInput(n=14, h=4, trace=True))
    assert out["success"] is True
    assert out["m"] == 46 and out["trace_ok"] is True


def test_generate_domain_error() -> None:
    out = _call(lab_generate, GenerateInput(n=3, h=3))
    assert out["success"] is False
    assert out["kind"] == "domain-error"


def test_cover() -> None:
    out = _call(lab_cover, CoverInput(n=9, r=6))
    assert out["minimal_k_pair"] == {"h": 5, "k": 1, "n": 9}
    out = _call(lab_cover, CoverInput(n=9, h=4))
    assert out["kind"] == "usage-error"


def test_analyze_and_ceiling() -> None:
    out = _call(lab_analyze, GraphInput(graph="  C~ "))
    assert out["success"] is True and out["best_nu_lower"] == 3
    out = _call(lab_ceiling, CeilingInput(graph="3 2\n1 2\n2 3\n", param="kappa"))
    assert out["value"] == "1" and out["witness_graph6"]


def test_construct_unknown_family() -> None:
    out = _call(lab_construct, ConstructInput(family="pyramid:3"))
    assert out["success"] is False
    assert out["kind"] == "invalid-params"
    assert "suggestion" in out


def test_verify() -> None:
    out = _call(lab_verify, VerifyInput(check="lickwhite", n_max=4))
    assert out["success"] is True
    assert out["tested"] == 1 + 2 + 4 + 11
    assert out["violations"] == []


def test_lifespan_empties_the_memo_on_shutdown() -> None:
    async def serve() -> int:
        async with lab_lifespan(mcp) as state:
            assert state["memo"] is MEMO
            ceiling(cycle(5), "delta")
            return len(MEMO)

    assert asyncio.run(serve()) > 0
    assert len(MEMO) == 0
