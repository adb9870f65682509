"""
degenlab command line
=====================
One entry point for the lab:

    gen        generator witness for (n, h), optionally with its trace
    analyze    all nu lower bounds for one graph
    ceil       minor-monotone ceiling of delta, kappa or d, with witness
    cover      covering-pair classification and covering sums
    construct  named graphs ("path:4", "matula:2", "ceiling-counterexample")
    verify     verification sweeps over enumerated graphs or a graph6 file
    convert    re-encode a graph (graph6, edge list, DOT)
    schema     JSON schema of a verb's --json output

Exit codes: 0 success, 1 check violations, 2 usage errors.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from bounds import BoundReport, bound_report
from covering import (
    CoveringPair,
    PairClassification,
    balanced_pair,
    classify_pair,
    covering_sum_threshold,
    is_covering_sum,
    minimal_k_pair_for_sum,
    ng_range,
)
from families import family_note, parse_family, standard_family
from generator import GenTrace, check_trace, generate
from graph_core import Graph, format_graph, read_graph, to_graph6
from harness import CHECK_ALIASES, CHECKS, Corpus, SweepReport, run_all, run_check, sweep_table
from lab_config import config, configure_logging
from lab_errors import LabError, UsageError, format_error
from minors import ceiling

logger = logging.getLogger("degenlab")

GRAPH_FORMATS = ("graph6", "edges", "dot")


# ============================================================================
# OUTPUT MODELS
# ============================================================================

class GraphOutput(BaseModel):
    n: int
    m: int
    graph6: str
    edges: List[List[int]] = Field(..., description="1-indexed, lexicographic")
    note: str = ""


class GenOutput(GraphOutput):
    h: int
    trace: Optional[GenTrace] = None
    trace_ok: Optional[bool] = None


class CeilOutput(BaseModel):
    param: str
    value: str
    value_float: float
    graph6: str
    ops: Optional[List[Dict[str, Any]]] = None
    witness_graph6: Optional[str] = None


class CoverOutput(BaseModel):
    n: int
    h: Optional[int] = None
    k: Optional[int] = None
    r: Optional[int] = None
    classification: Optional[PairClassification] = None
    is_covering_sum: Optional[bool] = None
    minimal_k_pair: Optional[CoveringPair] = None
    even_threshold: float
    odd_threshold: float
    ng_range: List[int]


class VerifyOutput(BaseModel):
    reports: List[SweepReport]
    passed: bool


SCHEMAS = {
    "gen": GenOutput,
    "analyze": BoundReport,
    "ceil": CeilOutput,
    "cover": CoverOutput,
    "construct": GraphOutput,
    "convert": GraphOutput,
    "verify": VerifyOutput,
}


def _graph_output(g: Graph, note: str = "") -> Dict[str, Any]:
    return dict(
        n=g.n,
        m=g.m,
        graph6=to_graph6(g).decode("ascii"),
        edges=[[u + 1, v + 1] for u, v in g.edges()],
        note=note,
    )


def _dump(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), indent=2)


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

class LabArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message, f"Run '{self.prog} --help' for usage")


def _read_input(source: str) -> Graph:
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text(encoding="ascii", errors="replace")
        except OSError as e:
            raise UsageError(f"cannot read {source}: {e.strerror}") from None
    return read_graph(text)


def build_parser() -> argparse.ArgumentParser:
    parser = LabArgumentParser(prog="degenlab", description="Graph degeneracy and nu lower-bound lab")
    parser.add_argument("--quiet", action="store_true", help="No progress bars, warnings only")
    parser.add_argument("--log-level", default="", help="Override DEGENLAB_LOG_LEVEL")
    parser.add_argument("--cap", type=int, default=None, help="Override the minor and subgraph oracle caps")
    parser.add_argument("--enum-cap", type=int, default=None, help="Override the enumeration cap")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=LabArgumentParser)

    p = sub.add_parser("gen", help="Generator witness for (n, h)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--format", choices=GRAPH_FORMATS, default="edges")
    p.add_argument("--trace", action="store_true", help="Emit the generator trace as JSON")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("analyze", help="All nu lower bounds for a graph")
    p.add_argument("--input", required=True, help="File or '-' for stdin; graph6 or edge list")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("ceil", help="Minor-monotone ceiling")
    p.add_argument("--param", choices=("delta", "kappa", "d"), required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("cover", help="Covering-pair calculus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("construct", help="Build a named graph")
    p.add_argument("family", help="e.g. path:4, complete-bipartite:2,3, matula:2, ceiling-counterexample")
    p.add_argument("--format", choices=GRAPH_FORMATS, default="edges")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="Run verification sweeps")
    p.add_argument("--check", required=True, help=f"One of {', '.join(CHECKS)} or 'all'")
    source = p.add_mutually_exclusive_group()
    source.add_argument("--n-max", type=int)
    source.add_argument("--corpus", type=Path)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--json", nargs="?", const="-", default=None, metavar="OUT",
                   help="Write the JSON report to OUT ('-' or no value: stdout)")

    p = sub.add_parser("convert", help="Re-encode a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--to", choices=GRAPH_FORMATS, default="graph6")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("schema", help="JSON schema of a verb's --json output")
    p.add_argument("target", choices=sorted(SCHEMAS))
    return parser


# ============================================================================
# VERBS
# ============================================================================

def cmd_gen(args) -> int:
    g, trace = generate(args.n, args.h)
    if args.trace or args.json:
        out = GenOutput(h=args.h, **_graph_output(g))
        if args.trace:
            out.trace = trace
            out.trace_ok = check_trace(trace, args.n, args.h).ok
        print(_dump(out))
    else:
        sys.stdout.write(format_graph(g, args.format))
    return 0


def cmd_analyze(args) -> int:
    report = bound_report(_read_input(args.input))
    if args.json:
        print(_dump(report))
        return 0
    print(f"n = {report.n}  m = {report.m}  m(G^c) = {report.m_c}  "
          f"delta = {report.min_degree}  l = {report.degeneracy}  l(G^c) = {report.complement_degeneracy}  "
          f"girth = {report.girth if report.girth is not None else 'inf'}")
    print(f"{'source':<30} {'rel':>3} {'value':>12}  flags")
    for e in report.entries:
        flags = ",".join(f for f, on in (("conditional", e.conditional), ("symbolic", e.symbolic),
                                         ("n/a", not e.applies)) if on)
        value = f"{e.value:.4f}" if e.value is not None else e.exact
        print(f"{e.source:<30} {e.relation:>3} {value:>12}  {flags}")
    print(f"best nu lower bound: {report.best_nu_lower:.4f} ({report.best_source}); "
          f"nu >= {report.nu_integer_lower}; mr_nu <= {report.mr_nu_upper:.4f}")
    for c in report.certificates:
        print(f"delta-conjecture certificate: {c.status}" + (f"({c.clause})" if c.clause else ""))
    return 0


def cmd_ceil(args) -> int:
    g = _read_input(args.input)
    result = ceiling(g, args.param)
    out = CeilOutput(
        param=result.param,
        value=str(result.value),
        value_float=float(result.value),
        graph6=to_graph6(g).decode("ascii"),
    )
    if args.witness:
        out.ops = [op.describe() for op in result.ops]
        out.witness_graph6 = to_graph6(result.witness).decode("ascii")
    if args.json:
        print(_dump(out))
        return 0
    print(f"ceil_{result.param} = {result.value}")
    if args.witness:
        for op in out.ops:
            print(f"  {op['kind']} {' '.join(str(v) for v in op['operands'])}")
        print(f"  witness {out.witness_graph6}")
    return 0


def cmd_cover(args) -> int:
    if args.r is not None and (args.h is not None or args.k is not None):
        raise UsageError("--r cannot be combined with --h/--k")
    if (args.h is None) != (args.k is None):
        raise UsageError("--h and --k must be given together")
    threshold = covering_sum_threshold(args.n)
    out = CoverOutput(
        n=args.n,
        even_threshold=threshold.even_min,
        odd_threshold=threshold.odd_min,
        ng_range=list(ng_range(args.n)),
    )
    if args.h is not None:
        out.h, out.k = args.h, args.k
        out.classification = classify_pair(CoveringPair(h=args.h, k=args.k, n=args.n))
    if args.r is not None:
        out.r = args.r
        out.is_covering_sum = is_covering_sum(args.r, args.n)
        out.classification = classify_pair(balanced_pair(args.r, args.n))
        if out.is_covering_sum:
            out.minimal_k_pair = minimal_k_pair_for_sum(args.n, args.r)
    print(_dump(out))
    return 0


def cmd_construct(args) -> int:
    spec = parse_family(args.family)
    g = standard_family(spec)
    if args.json:
        print(_dump(GraphOutput(**_graph_output(g, family_note(spec)))))
    else:
        sys.stdout.write(format_graph(g, args.format))
    return 0


def cmd_verify(args) -> int:
    show = not args.quiet and sys.stderr.isatty()
    if args.corpus is not None:
        corpus = Corpus.from_file(args.corpus)
    else:
        corpus = Corpus.up_to(args.n_max if args.n_max is not None else config.ENUM_CAP)
    if args.check == "all":
        reports = run_all(corpus, jobs=args.jobs, progress=show)
    else:
        spec = CHECKS.get(CHECK_ALIASES.get(args.check, args.check))
        if spec is not None and spec.cell_check is not None and args.corpus is None:
            n_max = args.n_max if args.n_max is not None else config.SWEEP_CAP
            corpus = Corpus(f"cells(n<={n_max})", n_max=n_max)
        reports = [run_check(args.check, corpus, jobs=args.jobs, progress=show)]
    out = VerifyOutput(reports=reports, passed=all(r.passed for r in reports))
    if args.json == "-":
        print(_dump(out))
    else:
        print(sweep_table(reports))
        if args.json:
            Path(args.json).write_text(_dump(out) + "\n", encoding="utf-8")
            logger.info(f"report written to {args.json}")
    return 0 if out.passed else 1


def cmd_convert(args) -> int:
    g = _read_input(args.input)
    if args.json:
        print(_dump(GraphOutput(**_graph_output(g))))
    else:
        sys.stdout.write(format_graph(g, args.to))
    return 0


def cmd_schema(args) -> int:
    print(json.dumps(SCHEMAS[args.target].model_json_schema(), indent=2))
    return 0


COMMANDS = {
    "gen": cmd_gen,
    "analyze": cmd_analyze,
    "ceil": cmd_ceil,
    "cover": cmd_cover,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "convert": cmd_convert,
    "schema": cmd_schema,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, dispatch one verb and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e.formatted(), file=sys.stderr)
        return 2
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args.log_level or ("WARNING" if args.quiet else ""))
    if args.cap is not None:
        config.MINOR_CAP = config.SUBGRAPH_CAP = args.cap
    if args.enum_cap is not None:
        config.ENUM_CAP = args.enum_cap
    try:
        return COMMANDS[args.verb](args)
    except LabError as e:
        print(e.formatted(), file=sys.stderr)
        return 2


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
