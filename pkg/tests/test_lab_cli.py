import io
import json

import pytest

from lab_cli import run


def _json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


# ============================================================================
# COVER
# ============================================================================

def test_cover_pair(capsys) -> None:
    assert run(["cover", "--n", "9", "--h", "4", "--k", "2"]) == 0
    out = _json(capsys)
    assert out["classification"] == {"is_covering": True, "left_minimal": False, "right_minimal": True}
    assert out["ng_range"] == [5, 8]


def test_cover_sum(capsys) -> None:
    assert run(["cover", "--n", "9", "--r", "6"]) == 0
    out = _json(capsys)
    assert out["is_covering_sum"] is True
    assert out["minimal_k_pair"] == {"h": 5, "k": 1, "n": 9}


def test_cover_sum_below_range(capsys) -> None:
    assert run(["cover", "--n", "9", "--r", "4"]) == 0
    out = _json(capsys)
    assert out["is_covering_sum"] is False
    assert out["minimal_k_pair"] is None


@pytest.mark.parametrize(
    "argv",
    [
        ["cover", "--n", "9", "--r", "6", "--h", "4"],
        ["cover", "--n", "9", "--h", "4"],
        ["cover", "--n", "9", "--h", "9", "--k", "0"],
    ],
)
def test_cover_usage_errors(argv, capsys) -> None:
    assert run(argv) == 2
    assert capsys.readouterr().err.startswith("Error:")


# ============================================================================
# GEN, CONSTRUCT, CONVERT
# ============================================================================

def test_gen_edge_list(capsys) -> None:
    assert run(["gen", "--n", "4", "--h", "1"]) == 0
    assert capsys.readouterr().out == "4 3\n1 2\n1 3\n2 4\n"


def test_gen_trace(capsys) -> None:
    assert run(["gen", "--n", "14", "--h", "4", "--trace"]) == 0
    out = _json(capsys)
    assert out["m"] == 46 and out["trace_ok"] is True
    assert out["trace"]["steps"][-1]["sigma"] == 45


def test_gen_domain_error(capsys) -> None:
    assert run(["gen", "--n", "3", "--h", "3"]) == 2
    assert "0 <= h < n" in capsys.readouterr().err


def test_construct(capsys) -> None:
    assert run(["construct", "matula:2", "--json"]) == 0
    out = _json(capsys)
    assert (out["n"], out["m"]) == (8, 14)
    assert run(["construct", "path:4", "--format", "graph6"]) == 0
    assert capsys.readouterr().out == "Ch\n"
    assert run(["construct", "ceiling-counterexample", "--json"]) == 0
    assert "reconstructed" in _json(capsys)["note"]
    assert run(["construct", "pyramid:3"]) == 2


def test_construct_accepts_the_figure_token(capsys) -> None:
    assert run(["construct", "figure1", "--format", "graph6"]) == 0
    figure = capsys.readouterr().out
    assert run(["construct", "ceiling-counterexample", "--format", "graph6"]) == 0
    assert capsys.readouterr().out == figure


def test_construct_names_the_unknown_family(capsys) -> None:
    assert run(["construct", "pyramid:3"]) == 2
    err = capsys.readouterr().err
    assert "unknown family 'pyramid'" in err
    assert "validation error" not in err


def test_convert(graph_file, capsys) -> None:
    path = graph_file("D?{\n")
    assert run(["convert", "--input", str(path), "--to", "edges"]) == 0
    assert capsys.readouterr().out == "5 4\n1 5\n2 5\n3 5\n4 5\n"
    assert run(["convert", "--input", str(path), "--to", "dot"]) == 0
    assert "4 -- 5;" in capsys.readouterr().out


# ============================================================================
# ANALYZE AND CEIL
# ============================================================================

def test_analyze_json(graph_file, capsys) -> None:
    assert run(["analyze", "--input", str(graph_file("A_\n")), "--json"]) == 0
    out = _json(capsys)
    assert (out["n"], out["m"]) == (2, 1)
    assert out["best_nu_lower"] == 1
    assert out["nu_integer_lower"] == 1


def test_analyze_table(graph_file, capsys) -> None:
    assert run(["analyze", "--input", str(graph_file("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"))]) == 0
    out = capsys.readouterr().out
    assert "best nu lower bound: 3.0000" in out
    assert "delta-conjecture certificate: NOT-CERTIFIED" in out


def test_analyze_malformed_input(graph_file, capsys) -> None:
    assert run(["analyze", "--input", str(graph_file("D?\n"))]) == 2
    err = capsys.readouterr().err
    assert err.startswith("Error:") and "byte 2" in err


def test_analyze_missing_file(tmp_path, capsys) -> None:
    assert run(["analyze", "--input", str(tmp_path / "absent.g6")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_ceil(graph_file, capsys) -> None:
    path = graph_file("C~\n")
    assert run(["ceil", "--param", "delta", "--input", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "ceil_delta = 3"
    assert run(["ceil", "--param", "d", "--input", str(path), "--witness", "--json"]) == 0
    out = _json(capsys)
    assert out["param"] == "avg-degree" and out["value"] == "3"
    assert out["ops"] == [] and out["witness_graph6"] == "C~"


def test_cap_flag_limits_the_oracles(graph_file, capsys) -> None:
    assert run(["--cap", "3", "ceil", "--param", "kappa", "--input", str(graph_file("C~\n"))]) == 2
    assert "capped at n <= 3" in capsys.readouterr().err


# ============================================================================
# VERIFY AND SCHEMA
# ============================================================================

def test_verify_table(capsys) -> None:
    assert run(["--quiet", "verify", "--check", "lickwhite", "--n-max", "4"]) == 0
    out = capsys.readouterr().out
    assert "lickwhite" in out and "ok" in out


def test_verify_json_to_stdout_and_file(tmp_path, capsys) -> None:
    assert run(["verify", "--check", "generator", "--n-max", "6", "--json"]) == 0
    out = _json(capsys)
    assert out["passed"] is True
    assert out["reports"][0]["tested"] == sum(range(1, 7))

    target = tmp_path / "report.json"
    assert run(["verify", "--check", "degeneracy_sum", "--n-max", "4", "--json", str(target)]) == 0
    saved = json.loads(target.read_text())
    assert saved["reports"][0]["tested"] == 1 + 2 + 4 + 11


def test_verify_accepts_check_aliases(capsys) -> None:
    assert run(["verify", "--check", "lgprop", "--n-max", "4", "--json"]) == 0
    report = _json(capsys)["reports"][0]
    assert (report["check"], report["tested"]) == ("degeneracy_sum", 1 + 2 + 4 + 11)
    assert run(["verify", "--check", "algorithm1", "--n-max", "5", "--json"]) == 0
    report = _json(capsys)["reports"][0]
    assert (report["check"], report["tested"]) == ("generator", sum(range(1, 6)))


def test_verify_corpus(graph_file, capsys) -> None:
    path = graph_file("A_\nC~\nbad!\n", name="corpus.g6")
    assert run(["verify", "--check", "lattice", "--corpus", str(path), "--json"]) == 0
    report = _json(capsys)["reports"][0]
    assert (report["tested"], report["malformed_records"]) == (2, 1)


def test_verify_usage_errors(graph_file, capsys) -> None:
    assert run(["verify", "--check", "nope", "--n-max", "3"]) == 2
    assert "Known checks" in capsys.readouterr().err
    assert run(["verify", "--check", "lattice", "--n-max", "3", "--corpus", str(graph_file("A_\n"))]) == 2


def test_schema(capsys) -> None:
    assert run(["schema", "verify"]) == 0
    schema = _json(capsys)
    assert "reports" in schema["properties"]
    assert run(["schema", "analyze"]) == 0
    assert "entries" in _json(capsys)["properties"]


def test_parser_exits(capsys) -> None:
    assert run(["--help"]) == 0
    assert "degenlab" in capsys.readouterr().out
    assert run(["frobnicate"]) == 2
    assert run([]) == 2


def test_analyze_reads_standard_input(monkeypatch, capsys) -> None:
    monkeypatch.setattr("sys.stdin", io.StringIO("D~{\n"))
    assert run(["analyze", "--input", "-", "--json"]) == 0
    assert _json(capsys)["best_nu_lower"] == 4


def test_gen_convert_analyze_round_trip(graph_file, capsys) -> None:
    assert run(["gen", "--n", "6", "--h", "2"]) == 0
    edges = graph_file(capsys.readouterr().out, name="g.edges")
    assert run(["convert", "--input", str(edges), "--to", "graph6"]) == 0
    g6 = graph_file(capsys.readouterr().out, name="g.g6")
    assert run(["convert", "--input", str(g6), "--json"]) == 0
    converted = _json(capsys)
    assert run(["gen", "--n", "6", "--h", "2", "--json"]) == 0
    generated = _json(capsys)
    assert converted["edges"] == generated["edges"]
    assert run(["analyze", "--input", str(g6), "--json"]) == 0
    assert _json(capsys)["degeneracy"] == 2
