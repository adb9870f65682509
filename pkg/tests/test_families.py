import pytest

from families import (
    CEILING_COUNTEREXAMPLE_EDGES,
    FamilySpec,
    ceiling_counterexample,
    cycle,
    family_note,
    matula,
    parse_family,
    standard_family,
)
from graph_core import complement, is_isomorphic
from lab_errors import InvalidParamsError, SizeLimitError
from minors import ceiling, max_subgraph_connectivity


def test_parse_family() -> None:
    assert parse_family("path:4") == FamilySpec(kind="path", params=[4])
    assert parse_family(" Complete-Bipartite:2,3 ").params == [2, 3]
    assert parse_family("ceiling-counterexample").params == []


def test_parse_family_aliases() -> None:
    assert parse_family("figure1") == FamilySpec(kind="ceiling-counterexample")
    assert parse_family("Figure1").kind == "ceiling-counterexample"


def test_parse_family_error_message() -> None:
    with pytest.raises(InvalidParamsError) as excinfo:
        parse_family("pth:4")
    message = excinfo.value.message
    assert message.startswith("cannot parse family spec 'pth:4': unknown family 'pth'")
    assert "\n" not in message
    assert "FamilySpec" not in message


@pytest.mark.parametrize("text", ["pth:4", "path:x", "matula:1,,2"])
def test_parse_family_rejects_bad_specs(text: str) -> None:
    with pytest.raises(InvalidParamsError):
        parse_family(text)


def test_standard_family_checks_arity_and_range() -> None:
    with pytest.raises(InvalidParamsError):
        standard_family(parse_family("path:4,5"))
    with pytest.raises(InvalidParamsError):
        standard_family(parse_family("path:0"))
    with pytest.raises(InvalidParamsError):
        cycle(2)
    with pytest.raises(SizeLimitError):
        standard_family(parse_family("complete:65"))
    with pytest.raises(SizeLimitError):
        matula(17)


def test_named_graph_sizes() -> None:
    assert standard_family(parse_family("cycle:5")).m == 5
    assert standard_family(parse_family("complete:5")).m == 10
    assert standard_family(parse_family("complete-bipartite:2,3")).m == 6
    assert standard_family(parse_family("empty:3")).m == 0


def test_matula_blocks() -> None:
    g = matula(2)
    assert (g.n, g.m) == (8, 14)
    # block-major: K_2 on {0, 1}, independent {2, 3}
    assert g.has_edge(0, 1)
    assert not g.has_edge(2, 3)
    assert g.has_edge(1, 2) and not g.has_edge(0, 4)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_matula_is_self_complementary(s: int) -> None:
    g = matula(s)
    assert g.n == 4 * s
    assert is_isomorphic(g, complement(g))


@pytest.mark.parametrize("s", [1, 2, 3])
def test_matula_subgraph_connectivity(s: int) -> None:
    assert max_subgraph_connectivity(matula(s)) == s


def test_ceiling_counterexample_shape() -> None:
    g = ceiling_counterexample()
    assert (g.n, g.m) == (8, len(CEILING_COUNTEREXAMPLE_EDGES)) == (8, 13)
    assert sorted(g.degrees()) == [2, 3, 3, 3, 3, 4, 4, 4]
    assert "reconstructed" in family_note(parse_family("ceiling-counterexample"))
    assert family_note(parse_family("path:3")) == ""


@pytest.mark.slow
def test_ceiling_counterexample_beats_n_minus_one() -> None:
    g = ceiling_counterexample()
    top = ceiling(g, "delta")
    bottom = ceiling(complement(g), "delta")
    assert top.value == bottom.value == 4
    assert top.value + bottom.value > g.n - 1
    assert top.replays_from(g)
    assert bottom.replays_from(complement(g))
