from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from degeneracy import degeneracy
from families import complete_bipartite, cycle, path
from graph_core import (
    Graph,
    complement,
    complete_graph,
    delete_edge,
    empty_graph,
    from_edges,
    from_networkx,
    induced_subgraph,
    vertex_connectivity,
)
from lab_config import config
from lab_errors import InvalidOperandError, SizeLimitError
from minors import (
    MinorMemo,
    ceiling,
    chromatic_number,
    clique_number,
    exact_parameters,
    hadwiger_number,
    independence_number,
    mader_subgraph_search,
    max_subgraph_connectivity,
    minor_children,
    resolve_param,
)
from strategies import graphs

PETERSEN = from_networkx(nx.petersen_graph())


# ============================================================================
# CEILINGS
# ============================================================================

@pytest.mark.parametrize(
    "g, param, expected",
    [
        (complete_graph(4), "delta", 3),
        (path(5), "delta", 1),
        (cycle(5), "delta", 2),
        (complete_bipartite(2, 3), "delta", 2),
        (complete_bipartite(2, 3), "kappa", 2),
        (complete_bipartite(3, 3), "kappa", 3),
        (empty_graph(3), "kappa", 0),
        (path(3), "d", Fraction(4, 3)),
        (empty_graph(1), "d", 0),
    ],
)
def test_ceiling_values(g: Graph, param: str, expected) -> None:
    result = ceiling(g, param)
    assert result.value == expected
    assert result.replays_from(g)


def test_ceiling_witness_descends_when_needed() -> None:
    # a pendant path hanging off K4 lowers delta; the witness deletes it
    g = from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)])
    result = ceiling(g, "delta")
    assert result.value == 3
    assert result.ops
    assert result.witness.n == 4
    assert result.replays_from(g)
    described = result.describe()
    assert described["param"] == "delta" and described["value"] == "3"
    assert all(v >= 1 for op in described["ops"] for v in op["operands"])


def test_ceiling_respects_the_cap() -> None:
    with pytest.raises(SizeLimitError):
        ceiling(empty_graph(6), "delta", cap=5)
    with pytest.raises(SizeLimitError):
        ceiling(empty_graph(11), "kappa")


def test_resolve_param_aliases() -> None:
    assert resolve_param("d").name == "avg-degree"
    assert resolve_param("eta").name == "clique"
    with pytest.raises(InvalidOperandError):
        resolve_param("treewidth")


def test_minor_children_order() -> None:
    kinds = [op.kind.value for op, _ in minor_children(path(3))]
    assert kinds == ["delete-vertex"] * 3 + ["delete-edge"] * 2 + ["contract-edge"] * 2
    assert list(minor_children(empty_graph(1))) == []


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_ceilings_are_minor_monotone(g: Graph) -> None:
    c_delta = ceiling(g, "delta").value
    assert c_delta >= degeneracy(g).value
    assert ceiling(g, "kappa").value <= c_delta
    assert ceiling(g, "d").value >= c_delta
    for u, v in g.edges():
        assert ceiling(delete_edge(g, u, v), "delta").value <= c_delta


def test_memo_insert_or_get() -> None:
    memo = MinorMemo()
    assert memo.get(("delta", (1, b""))) is None
    assert memo.put(("delta", (1, b"")), 0) == 0
    assert memo.put(("delta", (1, b"")), 5) == 0
    assert memo.get(("delta", (1, b""))) == 0
    assert (memo.hits, memo.misses, len(memo)) == (1, 1, 1)
    ceiling(cycle(5), "delta", memo=memo)
    assert len(memo) > 1
    memo.clear()
    assert (memo.hits, memo.misses, len(memo)) == (0, 0, 0)


def test_memo_evicts_oldest_entries_past_its_bound() -> None:
    memo = MinorMemo(max_entries=2)
    for i in range(3):
        memo.put(("delta", (i, b"")), i)
    assert len(memo) == 2 and memo.evictions == 1
    assert memo.get(("delta", (0, b""))) is None
    assert memo.get(("delta", (2, b""))) == 2
    ceiling(cycle(5), "delta", memo=memo)
    assert len(memo) <= 2
    assert ceiling(cycle(5), "delta", memo=memo).value == 2


def test_shared_memo_reads_its_bound_from_config() -> None:
    assert MinorMemo().max_entries == config.MEMO_MAX


# ============================================================================
# K-CONNECTED SUBGRAPHS
# ============================================================================

def test_mader_subgraph_search() -> None:
    found = mader_subgraph_search(complete_graph(4), 3)
    assert found is not None and found.vertices == (0, 1, 2, 3)
    assert mader_subgraph_search(cycle(5), 3) is None
    assert mader_subgraph_search(empty_graph(3), 0).vertices == (0,)
    assert mader_subgraph_search(empty_graph(3), 1) is None


def test_search_splits_on_separators() -> None:
    # two K4s sharing one vertex: 3-connected pieces, 1-connected whole
    edges = [(u, v) for block in ((0, 1, 2, 3), (3, 4, 5, 6)) for u in block for v in block if u < v]
    g = from_edges(7, edges)
    found = mader_subgraph_search(g, 3)
    assert found is not None
    assert len(found.vertices) == 4
    assert vertex_connectivity(found.graph) == 3
    assert max_subgraph_connectivity(g) == 3


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_max_subgraph_connectivity_matches_brute_force(g: Graph) -> None:
    brute = max(
        vertex_connectivity(induced_subgraph(g, mask)) for mask in range(1, 1 << g.n)
    )
    assert max_subgraph_connectivity(g) == brute
    for k in range(1, brute + 1):
        found = mader_subgraph_search(g, k)
        assert found is not None and vertex_connectivity(found.graph) >= k
    assert mader_subgraph_search(g, brute + 1) is None


def test_subgraph_cap() -> None:
    with pytest.raises(SizeLimitError):
        max_subgraph_connectivity(empty_graph(13))


# ============================================================================
# CHROMATIC, INDEPENDENCE AND HADWIGER NUMBERS
# ============================================================================

def test_exact_parameters_of_small_graphs() -> None:
    params = exact_parameters(cycle(5))
    assert (params.chi, params.alpha, params.eta) == (3, 2, 3)
    assert exact_parameters(complete_bipartite(3, 3)) == type(params)(chi=2, alpha=3, eta=4)
    assert exact_parameters(empty_graph(1)) == type(params)(chi=1, alpha=1, eta=1)
    assert hadwiger_number(complete_graph(5)) == 5


def test_exact_parameters_leave_eta_open_above_the_minor_cap() -> None:
    params = exact_parameters(cycle(11))
    assert (params.chi, params.alpha, params.eta) == (3, 5, None)
    with pytest.raises(SizeLimitError):
        hadwiger_number(cycle(11))


def test_petersen_colouring() -> None:
    assert chromatic_number(PETERSEN) == 3
    assert independence_number(PETERSEN) == 4
    assert clique_number(PETERSEN) == 2


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_colouring_invariants(g: Graph) -> None:
    chi = chromatic_number(g)
    alpha = independence_number(g)
    assert clique_number(g) <= chi <= degeneracy(g).value + 1
    assert chi * alpha >= g.n
    assert alpha == clique_number(complement(g))
