import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degeneracy import (
    back_degrees,
    building_sequence_degree,
    core_numbers,
    degeneracy,
    is_building_sequence,
    lick_white_bound,
)
from families import complete_bipartite, cycle, path
from graph_core import Graph, complete_graph, empty_graph, from_networkx
from lab_errors import DomainError, NotAPermutationError
from strategies import graphs


@pytest.mark.parametrize(
    "g, expected",
    [
        (empty_graph(4), 0),
        (path(6), 1),
        (cycle(7), 2),
        (complete_graph(5), 4),
        (complete_bipartite(2, 5), 2),
        (from_networkx(nx.petersen_graph()), 3),
    ],
)
def test_degeneracy_values(g: Graph, expected: int) -> None:
    assert degeneracy(g).value == expected


def test_peeling_breaks_ties_on_smallest_index() -> None:
    cert = degeneracy(path(4))
    # peeled 0, 1, 2, 3; the building order is the reverse
    assert cert.ordering == (3, 2, 1, 0)
    assert cert.back_degrees == (0, 1, 1, 1)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_certificate_replays_and_matches_core_numbers(g: Graph) -> None:
    cert = degeneracy(g)
    assert cert.replays_on(g)
    assert cert.value == max(core_numbers(g))
    assert g.m <= lick_white_bound(g.n, cert.value)
    assert is_building_sequence(g, cert.ordering, cert.value)


def test_building_sequence_degree() -> None:
    g = path(4)
    assert back_degrees(g, [0, 1, 2, 3]) == [0, 1, 1, 1]
    assert building_sequence_degree(g, [1, 2, 0, 3]) == 1
    assert building_sequence_degree(complete_graph(4), [3, 2, 1, 0]) == 3
    assert not is_building_sequence(complete_graph(4), [0, 1, 2, 3], 2)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_no_building_sequence_beats_the_degeneracy(data) -> None:
    g = data.draw(graphs(max_n=9))
    order = data.draw(st.permutations(range(g.n)))
    assert building_sequence_degree(g, order) >= degeneracy(g).value


@pytest.mark.parametrize("order", [[0, 1, 2], [0, 1, 2, 2], [0, 1, 2, 4]])
def test_back_degrees_needs_a_permutation(order) -> None:
    with pytest.raises(NotAPermutationError):
        back_degrees(path(4), order)


def test_lick_white_bound() -> None:
    assert lick_white_bound(5, 2) == 7
    assert lick_white_bound(14, 4) == 46
    assert all(lick_white_bound(n, n - 1) == n * (n - 1) // 2 for n in range(1, 12))
    assert lick_white_bound(3, 0) == 0
    with pytest.raises(DomainError):
        lick_white_bound(4, 4)
    with pytest.raises(DomainError):
        lick_white_bound(4, -1)
