"""
Right-minimal pair generator
============================
Builds, for 0 <= h < n, a graph G with l(G) = h whose complement has the
smallest degeneracy a covering pair allows. Vertex i (1-indexed) joins all
predecessors while i <= h + 1; afterwards it joins the h predecessors with
the largest complement degree so far (smallest index on ties). L tracks
those complement degrees.

The trace keeps L after every step so the counting facts the construction
relies on can be re-checked, and realize_sum() uses the generator to
realise every attainable degeneracy sum.
"""

import logging
from collections import Counter
from typing import Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field

from covering import CoveringPair, classify_pair, minimal_k_pair_for_sum
from degeneracy import building_sequence_degree, degeneracy, lick_white_bound
from graph_core import Graph, MAX_ORDER, complement
from lab_errors import DomainError

logger = logging.getLogger(__name__)


class GenStep(BaseModel):
    """State after placing vertex i (1-indexed)."""

    i: int
    S: List[int] = Field(..., description="Chosen neighbours of vertex i, 1-indexed")
    L: List[int] = Field(..., description="Complement degrees after the update")
    t: int = Field(..., description="max L")
    sigma: int = Field(..., description="sum L")
    p: int = Field(..., description="Entries of L equal to t - 1 (0 when t = 0)")
    q: int = Field(..., description="Entries of L equal to t")
    psi: List[int] = Field(..., description="psi[r] = number of entries of L equal to r, r = 0..t")


class GenTrace(BaseModel):
    n: int
    h: int
    steps: List[GenStep]

    @property
    def final(self) -> Optional[GenStep]:
        return self.steps[-1] if self.steps else None


class TraceCheck(BaseModel):
    """Outcome of check_trace; on failure names the first violated clause."""

    ok: bool
    iteration: Optional[int] = None
    clause: Optional[str] = None
    detail: Optional[str] = None


def _step(i: int, chosen: List[int], L: List[int]) -> GenStep:
    t = max(L)
    counts = Counter(L)
    return GenStep(
        i=i,
        S=[j + 1 for j in chosen],
        L=list(L),
        t=t,
        sigma=sum(L),
        p=counts[t - 1] if t > 0 else 0,
        q=counts[t],
        psi=[counts[r] for r in range(t + 1)],
    )


def generate(n: int, h: int) -> Tuple[Graph, GenTrace]:
    """Deterministic witness graph of order n and degeneracy h, with its trace."""
    if not 0 <= h < n <= MAX_ORDER:
        raise DomainError(f"generate needs 0 <= h < n <= {MAX_ORDER}, got n = {n}, h = {h}")
    rows = [0] * n
    L = [0] * n
    steps: List[GenStep] = []
    for i in range(1, n):
        if i <= h:
            chosen = list(range(i))
        else:
            chosen = sorted(sorted(range(i), key=lambda j: (-L[j], j))[:h])
        picked = set(chosen)
        for j in range(i):
            if j in picked:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            else:
                L[j] += 1
        steps.append(_step(i + 1, chosen, L))
    return Graph._trusted(n, tuple(rows)), GenTrace(n=n, h=h, steps=steps)


def check_trace(trace: GenTrace, n: int, h: int) -> TraceCheck:
    """Re-check the counting facts of a generator run; stops at the first failure."""

    def fail(i: int, clause: str, detail: str) -> TraceCheck:
        return TraceCheck(ok=False, iteration=i, clause=clause, detail=detail)

    if len(trace.steps) != n - 1:
        return fail(0, "length", f"expected {n - 1} steps, got {len(trace.steps)}")
    prev_t, prev_q, prev_sigma = 0, n, 0
    for step in trace.steps:
        i, t, q, p = step.i, step.t, step.q, step.p
        if len(step.S) != min(i - 1, h):
            return fail(i, "neighbour-count", f"|S| = {len(step.S)}, expected {min(i - 1, h)}")
        if step.sigma - prev_sigma != (i - 1) - len(step.S):
            return fail(i, "sigma-increment", f"sigma went {prev_sigma} -> {step.sigma}")
        if i >= h + 2:
            expected_t = prev_t if prev_q <= h else prev_t + 1
            if t != expected_t:
                return fail(i, "t-recurrence", f"t = {t}, expected {expected_t}")
            if t >= 2:
                if step.psi[0] != n - i + 1:
                    return fail(i, "psi-zero", f"psi(0) = {step.psi[0]}, expected {n - i + 1}")
                if any(step.psi[r] != 1 for r in range(1, t - 1)):
                    return fail(i, "psi-middle", f"psi = {step.psi}")
                if p < 1 or q < 1 or p + q < h:
                    return fail(i, "psi-top", f"p = {p}, q = {q}, h = {h}")
            elif t == 1 and not 1 <= q <= i - 1:
                return fail(i, "psi-one", f"q = {q} outside 1..{i - 1}")
        prev_t, prev_q, prev_sigma = t, q, step.sigma

    t, sigma = prev_t, prev_sigma
    lower = (t - 1) * n - (t - 1) * t // 2 + 1
    upper = t * n - t * (t + 1) // 2
    if not lower <= sigma <= upper:
        return fail(n, "sigma-bounds", f"sigma = {sigma} outside [{lower}, {upper}]")
    if h * n - h * (h + 1) // 2 + sigma != n * (n - 1) // 2:
        return fail(n, "size-identity", f"h = {h}, sigma = {sigma}, n = {n}")
    return TraceCheck(ok=True)


def realize_sum(n: int, r: int) -> Graph:
    """Graph of order n with l(G) + l(G^c) = r."""
    pair = minimal_k_pair_for_sum(n, r)
    graph, _ = generate(n, pair.h)
    return graph


def audit_cell(n: int, h: int) -> List[str]:
    """Every property the generator guarantees for (n, h); returns failure descriptions."""
    graph, trace = generate(n, h)
    comp = complement(graph)
    problems: List[str] = []
    if graph.m != lick_white_bound(n, h):
        problems.append(f"m = {graph.m}, expected {lick_white_bound(n, h)}")
    l_g = degeneracy(graph).value
    l_c = degeneracy(comp).value
    if l_g != h:
        problems.append(f"l(G) = {l_g}, expected {h}")
    cls = classify_pair(CoveringPair(h=l_g, k=l_c, n=n))
    if not (cls.is_covering and cls.right_minimal):
        problems.append(f"({l_g}, {l_c}) is not a right-minimal covering pair")
    if building_sequence_degree(graph, range(n)) != l_g:
        problems.append("forward order is not a building sequence of degree l(G)")
    if building_sequence_degree(comp, range(n - 1, -1, -1)) != l_c:
        problems.append("reverse order is not a building sequence of degree l(G^c)")
    final_t = trace.final.t if trace.final else 0
    if final_t != l_c:
        problems.append(f"t_n = {final_t} but l(G^c) = {l_c}")
    report = check_trace(trace, n, h)
    if not report.ok:
        problems.append(f"trace clause {report.clause} at i = {report.iteration}: {report.detail}")
    return problems


def generate_sweep(n_max: int) -> Iterator[Tuple[int, int]]:
    """All (n, h) cells with 1 <= n <= n_max and 0 <= h < n."""
    for n in range(1, n_max + 1):
        for h in range(n):
            yield n, h
