"""
Verification sweeps
===================
Turns every inequality the lab knows into a falsifiable check and runs it
over a corpus: all graphs of a given order (enumerated here, up to the
enumeration cap) or a file of graph6 records.

Graph checks are plain module-level functions of a graph6 string so they
can be fanned out to worker processes; cell checks sweep the generator's
(n, h) or (n, r) cells instead of a corpus.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field
from tqdm import tqdm

from bounds import Surd, nu_lower_from_complement, wggc_bound
from covering import ng_range
from degeneracy import degeneracy, lick_white_bound
from generator import audit_cell, generate, realize_sum
from graph_core import (
    Graph,
    canonical_form,
    certificate,
    complement,
    degree_stats,
    parse_graph6,
    to_graph6,
    vertex_connectivity,
)
from lab_config import config
from lab_errors import MalformedInputError, SizeLimitError, UnknownCheckError, UsageError
from minors import (
    ceiling,
    chromatic_number,
    hadwiger_number,
    independence_number,
    mader_subgraph_search,
    max_subgraph_connectivity,
)

logger = logging.getLogger(__name__)


# ============================================================================
# CORPORA
# ============================================================================

@lru_cache(maxsize=None)
def _graphs_of_order(n: int) -> Tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, (0,)),)
    seen = set()
    out = []
    for parent in _graphs_of_order(n - 1):
        for nbrs in range(1 << (n - 1)):
            rows = [row | ((nbrs >> v & 1) << (n - 1)) for v, row in enumerate(parent.rows)]
            child = Graph._trusted(n, tuple(rows) + (nbrs,))
            cert = certificate(child)
            if cert not in seen:
                seen.add(cert)
                out.append(canonical_form(child))
    out.sort(key=lambda g: (g.m, to_graph6(g)))
    return tuple(out)


def enumerate_graphs(n: int, cap: Optional[int] = None) -> Iterator[Graph]:
    """Every graph of order n up to isomorphism, exactly once, in a fixed order."""
    cap = config.ENUM_CAP if cap is None else cap
    if n > cap:
        raise SizeLimitError(
            "internal enumeration", n, cap,
            suggestion="Generate the graphs with an external tool and pass them with --corpus",
        )
    if n < 1:
        raise UsageError(f"enumeration order must be >= 1, got {n}")
    yield from _graphs_of_order(n)


def ingest_corpus(path: Path, errors: Optional[List[MalformedInputError]] = None) -> Iterator[Graph]:
    """Stream graphs from a file of graph6 records; bad lines are recorded, not fatal."""
    with open(path, "rb") as handle:
        for line_no, raw in enumerate(handle, start=1):
            record = raw.strip()
            if not record:
                continue
            try:
                yield parse_graph6(record)
            except MalformedInputError as e:
                err = MalformedInputError(e.detail, offset=e.offset, line=line_no)
                logger.warning(f"{path}: {err.message}")
                if errors is not None:
                    errors.append(err)


@dataclass
class Corpus:
    """Where a sweep takes its graphs from."""

    description: str
    n_max: Optional[int] = None
    orders: Tuple[int, ...] = ()
    path: Optional[Path] = None
    errors: List[MalformedInputError] = field(default_factory=list)

    @classmethod
    def enumerate(cls, n: int) -> "Corpus":
        return cls(f"enumerate(n={n})", n_max=n, orders=(n,))

    @classmethod
    def up_to(cls, n_max: int) -> "Corpus":
        return cls(f"enumerate(n<={n_max})", n_max=n_max, orders=tuple(range(1, n_max + 1)))

    @classmethod
    def from_file(cls, path: Path) -> "Corpus":
        return cls(f"file:{path}", path=Path(path))

    def graphs(self) -> Iterator[Graph]:
        if self.path is not None:
            yield from ingest_corpus(self.path, self.errors)
            return
        for n in self.orders:
            yield from enumerate_graphs(n)


# ============================================================================
# GRAPH CHECKS
# ============================================================================
# Each returns None when the graph passes and a description otherwise.

def _kappa_ceiling(g: Graph) -> int:
    return int(ceiling(g, "kappa").value)


def check_degeneracy_sum(g: Graph) -> Optional[str]:
    total = degeneracy(g).value + degeneracy(complement(g)).value
    lo, hi = ng_range(g.n)
    if not lo <= total <= hi:
        return f"l(G) + l(G^c) = {total} outside [{lo}, {hi}]"
    return None


def check_lickwhite(g: Graph) -> Optional[str]:
    l = degeneracy(g).value
    if g.m > lick_white_bound(g.n, l):
        return f"m = {g.m} exceeds {lick_white_bound(g.n, l)} for l = {l}"
    return None


def check_mader(g: Graph) -> Optional[str]:
    for k in range(1 if g.m >= 1 else 2, 5):
        if g.n >= 2 * k - 1 and g.m >= (2 * k - 3) * (g.n - k + 1) + 1:
            found = mader_subgraph_search(g, k)
            if found is None:
                return f"no {k}-connected subgraph although n = {g.n}, m = {g.m}"
            if vertex_connectivity(found.graph) < k:
                return f"witness for k = {k} has connectivity {vertex_connectivity(found.graph)}"
    return None


def check_kappa_complement_size(g: Graph) -> Optional[str]:
    if g.n < 2:
        return None
    kc = _kappa_ceiling(g)
    bound = nu_lower_from_complement(g.n, complement(g).m)
    if not Surd.of(kc) > bound:
        return f"kappa ceiling {kc} <= {bound}"
    return None


def check_wggc_surrogate(g: Graph) -> Optional[str]:
    if g.n < 4:
        return None
    total = (g.n - _kappa_ceiling(g)) + (g.n - _kappa_ceiling(complement(g)))
    if not Surd.of(total) < wggc_bound(g.n):
        return f"(n - ceil_kappa(G)) + (n - ceil_kappa(G^c)) = {total} >= {wggc_bound(g.n)}"
    return None


def check_one_fourth(g: Graph) -> Optional[str]:
    if g.m == 0:
        return None
    kc = _kappa_ceiling(g)
    d = Fraction(ceiling(g, "avg-degree").value)
    if not kc > d / 4:
        return f"kappa ceiling {kc} <= {d}/4"
    return None


def check_lattice(g: Graph) -> Optional[str]:
    stats = degree_stats(g)
    l = degeneracy(g).value
    c_delta = ceiling(g, "delta").value
    c_kappa = _kappa_ceiling(g)
    c_d = ceiling(g, "avg-degree").value
    eta = hadwiger_number(g)
    chi = chromatic_number(g)
    alpha = independence_number(g)
    failures = []
    if not stats.min_degree <= l <= c_delta:
        failures.append(f"delta {stats.min_degree}, l {l}, ceil_delta {c_delta} out of order")
    if c_delta < c_kappa:
        failures.append(f"ceil_delta {c_delta} < ceil_kappa {c_kappa}")
    if c_kappa < eta - 1:
        failures.append(f"ceil_kappa {c_kappa} < eta - 1 = {eta - 1}")
    if l < chi - 1:
        failures.append(f"l {l} < chi - 1 = {chi - 1}")
    if chi * alpha < g.n:
        failures.append(f"chi {chi} < n / alpha = {g.n}/{alpha}")
    if c_d < c_delta:
        failures.append(f"ceil_d {c_d} < ceil_delta {c_delta}")
    if c_kappa < max_subgraph_connectivity(g):
        failures.append("ceil_kappa below the best subgraph connectivity")
    return "; ".join(failures) or None


def check_kappa_vs_delta(g: Graph) -> Optional[str]:
    delta = degree_stats(g).min_degree
    kc = _kappa_ceiling(g)
    if kc < delta:
        return f"ceil_kappa {kc} < delta {delta}"
    return None


# ============================================================================
# CELL CHECKS
# ============================================================================
# Each yields (graph, description-or-None) per cell up to n_max.

def cells_generator(n_max: int) -> Iterator[Tuple[Graph, Optional[str]]]:
    for n in range(1, n_max + 1):
        for h in range(n):
            problems = audit_cell(n, h)
            yield generate(n, h)[0], (f"n = {n}, h = {h}: " + "; ".join(problems)) if problems else None


def cells_ng_realizability(n_max: int) -> Iterator[Tuple[Graph, Optional[str]]]:
    for n in range(1, n_max + 1):
        lo, hi = ng_range(n)
        for r in range(lo, hi + 1):
            g = realize_sum(n, r)
            total = degeneracy(g).value + degeneracy(complement(g)).value
            yield g, None if total == r else f"n = {n}, r = {r}: realized sum {total}"


# ============================================================================
# REGISTRY
# ============================================================================

@dataclass(frozen=True)
class CheckSpec:
    name: str
    description: str
    graph_check: Optional[Callable[[Graph], Optional[str]]] = None
    cell_check: Optional[Callable[[int], Iterator[Tuple[Graph, Optional[str]]]]] = None
    report_only: bool = False


CHECKS: Dict[str, CheckSpec] = {
    spec.name: spec
    for spec in [
        CheckSpec("degeneracy_sum", "l(G) + l(G^c) lies in the Nordhaus-Gaddum range",
                  graph_check=check_degeneracy_sum),
        CheckSpec("lickwhite", "m <= l n - l(l+1)/2", graph_check=check_lickwhite),
        CheckSpec("mader", "dense graphs contain k-connected subgraphs (k <= 4)",
                  graph_check=check_mader),
        CheckSpec("kappa_complement_size", "ceil_kappa(G) > (n-1)/2 - sqrt(m(G^c)/2)",
                  graph_check=check_kappa_complement_size),
        CheckSpec("wggc_surrogate", "kappa-ceiling form of the complement-sum bound (n >= 4)",
                  graph_check=check_wggc_surrogate),
        CheckSpec("one_fourth", "ceil_kappa(G) > ceil_d(G)/4", graph_check=check_one_fourth),
        CheckSpec("lattice", "known order relations between delta, l, ceilings, eta, chi, alpha",
                  graph_check=check_lattice),
        CheckSpec("generator", "every generator guarantee for all (n, h) cells",
                  cell_check=cells_generator),
        CheckSpec("ng_realizability", "every sum in ng_range(n) is realized",
                  cell_check=cells_ng_realizability),
        CheckSpec("kappa_vs_delta_scan", "graphs with ceil_kappa < delta (report only)",
                  graph_check=check_kappa_vs_delta, report_only=True),
    ]
}

# Checks run by 'verify --check all' on an enumerated corpus, in this order.
DEFAULT_ORDER = list(CHECKS)

# Short names accepted on the command line.
CHECK_ALIASES: Dict[str, str] = {
    "lgprop": "degeneracy_sum",
    "kappa_thm3": "kappa_complement_size",
    "algorithm1": "generator",
}


def get_check(name: str) -> CheckSpec:
    name = CHECK_ALIASES.get(name, name)
    if name not in CHECKS:
        raise UnknownCheckError(
            f"unknown check '{name}'", f"Known checks: {', '.join(CHECKS)}"
        )
    return CHECKS[name]


# ============================================================================
# SWEEP ENGINE
# ============================================================================

class Violation(BaseModel):
    graph6: str
    details: str


class SweepReport(BaseModel):
    check: str
    corpus: str
    tested: int = 0
    violations: List[Violation] = Field(default_factory=list)
    elapsed_ms: int = 0
    skipped: int = Field(0, description="Graphs beyond an oracle cap")
    report_only: bool = False
    malformed_records: int = 0

    @property
    def passed(self) -> bool:
        return self.report_only or not self.violations

    def merge(self, other: "SweepReport") -> "SweepReport":
        merged = self.model_copy(deep=True)
        merged.tested += other.tested
        merged.skipped += other.skipped
        merged.elapsed_ms += other.elapsed_ms
        merged.violations = sorted(self.violations + other.violations, key=lambda v: (v.graph6, v.details))
        return merged


def _set_caps(caps: Dict[str, int]) -> None:
    for key, value in caps.items():
        setattr(config, key, value)


def _evaluate(job: Tuple[str, str]) -> Tuple[str, Optional[str], bool]:
    """Worker entry: (check, graph6) -> (graph6, detail, skipped)."""
    name, g6 = job
    try:
        detail = CHECKS[name].graph_check(parse_graph6(g6))
    except SizeLimitError as e:
        logger.debug(f"{name}: skipping {g6}: {e.message}")
        return g6, None, True
    return g6, detail, False


def _progress(items: Iterable, total: Optional[int], desc: str, show: bool) -> Iterable:
    return tqdm(items, total=total, desc=desc, disable=not show, leave=False, unit="graph")


def run_check(
    name: str,
    corpus: Corpus,
    jobs: Optional[int] = None,
    progress: bool = False,
) -> SweepReport:
    """Run one registry check over a corpus and return its report."""
    spec = get_check(name)
    name = spec.name
    jobs = config.JOBS if jobs is None else max(1, jobs)
    started = time.perf_counter()
    report = SweepReport(check=name, corpus=corpus.description, report_only=spec.report_only)
    logger.info(f"check {name} on {corpus.description}")

    if spec.cell_check is not None:
        if corpus.n_max is None:
            raise UsageError(f"check '{name}' sweeps generator cells", "Use --n-max instead of --corpus")
        for g, detail in _progress(spec.cell_check(corpus.n_max), None, name, progress):
            report.tested += 1
            if detail:
                report.violations.append(Violation(graph6=to_graph6(g).decode("ascii"), details=detail))
    else:
        records = [to_graph6(g).decode("ascii") for g in corpus.graphs()]
        report.malformed_records = len(corpus.errors)
        work = [(name, g6) for g6 in records]
        if jobs > 1 and len(work) > 1:
            caps = {k: getattr(config, k) for k in ("MINOR_CAP", "SUBGRAPH_CAP", "ISO_CAP", "ENUM_CAP")}
            with ProcessPoolExecutor(max_workers=jobs, initializer=_set_caps, initargs=(caps,)) as pool:
                results = pool.map(_evaluate, work, chunksize=max(1, len(work) // (jobs * 8)))
                outcomes = list(_progress(results, len(work), name, progress))
        else:
            outcomes = [_evaluate(job) for job in _progress(work, len(work), name, progress)]
        for g6, detail, skipped in outcomes:
            if skipped:
                report.skipped += 1
                continue
            report.tested += 1
            if detail:
                report.violations.append(Violation(graph6=g6, details=detail))

    report.violations.sort(key=lambda v: (v.graph6, v.details))
    report.elapsed_ms = int((time.perf_counter() - started) * 1000)
    level = logging.INFO if report.passed else logging.WARNING
    logger.log(level, f"check {name}: {report.tested} tested, {len(report.violations)} violations")
    return report


def recheck(name: str, violation: Violation) -> Optional[str]:
    """Re-run a graph check on a reported violation (None means it no longer triggers)."""
    spec = get_check(name)
    if spec.graph_check is None:
        raise UsageError(f"check '{name}' has no per-graph form")
    return spec.graph_check(parse_graph6(violation.graph6))


def run_all(corpus: Corpus, jobs: Optional[int] = None, progress: bool = False) -> List[SweepReport]:
    reports = []
    for name in DEFAULT_ORDER:
        source = corpus
        if CHECKS[name].cell_check is not None:
            source = Corpus(f"cells(n<={config.SWEEP_CAP})", n_max=config.SWEEP_CAP)
        reports.append(run_check(name, source, jobs=jobs, progress=progress))
    return reports


def sweep_table(reports: List[SweepReport]) -> str:
    """Plain-text summary, one row per report."""
    header = f"{'check':<24} {'corpus':<22} {'tested':>7} {'viol':>5} {'skip':>5} {'ms':>8}  status"
    lines = [header, "-" * len(header)]
    for r in reports:
        status = "report" if r.report_only else ("ok" if r.passed else "FAIL")
        lines.append(
            f"{r.check:<24} {r.corpus:<22} {r.tested:>7} {len(r.violations):>5} "
            f"{r.skipped:>5} {r.elapsed_ms:>8}  {status}"
        )
    return "\n".join(lines)
