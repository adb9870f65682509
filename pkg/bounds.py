"""
Lower bounds on the Colin de Verdiere parameter nu
==================================================
Closed-form evaluators for the known lower bounds on nu(G), the
conditional bounds that assume the delta-conjecture, the girth and
forbidden-subgraph certificates for that conjecture, and bound_report()
which gathers all of them for one graph.

nu itself is never computed. Values that involve a square root are kept as
exact Surd values so that picking the best bound never depends on floating
point.
"""

import logging
import math
from fractions import Fraction
from functools import total_ordering
from typing import List, Optional, Union

from pydantic import BaseModel, Field, PrivateAttr

from degeneracy import degeneracy
from graph_core import GIRTH_INFINITE, Girth, Graph, complement, degree_stats, girth, has_four_cycle
from lab_config import config
from lab_errors import DomainError
from minors import (
    ceiling,
    chromatic_number,
    hadwiger_number,
    independence_number,
    max_subgraph_connectivity,
)

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

STRICT = ">"
AT_LEAST = ">="

# Balogh-Kostochka constant c = (80 - sqrt(5392)) / 126.
BK_RADICAND = 5392

KUHN_OSTHUS_DELTA_MIN = 8 * 10**6


# ============================================================================
# EXACT SURDS
# ============================================================================

def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign1(x: Fraction, y: Fraction, p: int) -> int:
    """Sign of x + y*sqrt(p)."""
    if y == 0 or p == 0:
        return _sign(x)
    s = _sign(y)
    if x == 0 or _sign(x) == s:
        return s
    d = x * x - y * y * p
    return _sign(x) if d > 0 else (s if d < 0 else 0)


def _sign2(x: Fraction, y: Fraction, p: int, z: Fraction, q: int) -> int:
    """Sign of x + y*sqrt(p) + z*sqrt(q), by squaring."""
    if z == 0 or q == 0:
        return _sign1(x, y, p)
    if y == 0 or p == 0 or p == q:
        return _sign1(x, (y if p == q else 0) + z, q)
    a = _sign1(x, y, p)
    b = _sign(z)
    if a == 0:
        return b
    if a == b:
        return a
    d = _sign1(x * x + y * y * p - z * z * q, 2 * x * y, p)
    return a if d > 0 else (b if d < 0 else 0)


@total_ordering
class Surd:
    """rational + coef * sqrt(radicand), immutable."""

    __slots__ = ("rational", "coef", "radicand")

    def __init__(self, rational: Rational, coef: Rational = 0, radicand: int = 0):
        self.rational = Fraction(rational)
        self.coef = Fraction(coef)
        self.radicand = radicand

    def __repr__(self) -> str:
        return f"Surd({self})"

    @staticmethod
    def of(value: Union["Surd", Rational]) -> "Surd":
        return value if isinstance(value, Surd) else Surd(Fraction(value))

    @staticmethod
    def make(rational: Rational, coef: Rational = 0, radicand: int = 0) -> "Surd":
        if radicand < 0:
            raise DomainError(f"negative radicand {radicand}")
        coef = Fraction(coef)
        root = math.isqrt(radicand)
        if root * root == radicand:
            return Surd(Fraction(rational) + coef * root)
        if coef == 0:
            return Surd(Fraction(rational))
        return Surd(Fraction(rational), coef, radicand)

    def _cmp(self, other) -> int:
        o = Surd.of(other)
        return _sign2(self.rational - o.rational, self.coef, self.radicand, -o.coef, o.radicand)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __hash__(self):
        return hash((self.rational, self.coef, self.radicand))

    def __float__(self) -> float:
        try:
            return float(self.rational) + float(self.coef) * math.sqrt(self.radicand)
        except OverflowError:
            return math.inf if self._cmp(0) > 0 else -math.inf

    def floor(self) -> int:
        f = float(self)
        guess = math.floor(f) if math.isfinite(f) else 0
        while self >= guess + 1:
            guess += 1
        while self < guess:
            guess -= 1
        return guess

    def ceil(self) -> int:
        f = self.floor()
        return f if self == f else f + 1

    def __str__(self) -> str:
        if self.coef == 0:
            return str(self.rational)
        sign = "-" if self.coef < 0 else "+"
        head = f"{self.rational} {sign} " if self.rational else ("-" if sign == "-" else "")
        return f"{head}{abs(self.coef)}*sqrt({self.radicand})"


def _as_float(value: Rational) -> float:
    try:
        return float(value)
    except OverflowError:
        return math.inf


# ============================================================================
# REPORT MODELS
# ============================================================================

class BoundEntry(BaseModel):
    """One lower bound on nu(G) with its provenance."""
    source: str = Field(..., description="Provenance tag of the bound")
    relation: str = Field(AT_LEAST, description="'>' for strict bounds, '>=' otherwise")
    value: Optional[float] = Field(None, description="Numeric value, None when symbolic")
    exact: str = Field("", description="Exact value as text")
    conditional: bool = Field(False, description="Holds only if the delta-conjecture holds")
    symbolic: bool = Field(False, description="Involves an unspecified constant")
    applies: bool = Field(True, description="Hypotheses of the bound are met")
    note: str = ""
    _surd: Optional[Surd] = PrivateAttr(default=None)

    @property
    def surd(self) -> Optional[Surd]:
        return self._surd

    def integer_floor(self) -> Optional[int]:
        """Smallest integer nu this entry forces."""
        if self.surd is None:
            return None
        return self.surd.floor() + 1 if self.relation == STRICT else self.surd.ceil()


def entry(source: str, value: Union[Surd, Rational], relation: str = AT_LEAST, **kw) -> BoundEntry:
    s = Surd.of(value)
    e = BoundEntry(source=source, relation=relation, value=float(s), exact=str(s), **kw)
    e._surd = s
    return e


class CertificateStatus(BaseModel):
    status: str = Field(..., description="CERTIFIED, CONDITIONAL or NOT-CERTIFIED")
    clause: Optional[str] = None
    detail: str = ""


class ForbiddenPattern(BaseModel):
    """K_{s,s'} (kind 'K') or C_{2t} (kind 'C') excluded as a subgraph."""

    kind: str
    s: int = 2
    s2: int = 2
    t: int = 2

    def label(self) -> str:
        return f"K_{{{self.s},{self.s2}}}" if self.kind == "K" else f"C_{2 * self.t}"


class SymbolicBound(BaseModel):
    exponent: str
    magnitude: float
    statement: str


class BoundReport(BaseModel):
    n: int
    m: int
    m_c: int
    min_degree: int
    degeneracy: int
    complement_degeneracy: int
    girth: Optional[int] = Field(None, description="None for forests")
    entries: List[BoundEntry]
    best_nu_lower: float
    best_nu_lower_exact: str
    best_source: str
    nu_integer_lower: int
    mr_nu_upper: float
    certificates: List[CertificateStatus]
    complement_sum_upper: Optional[float] = Field(
        None, description="Upper bound on mr_nu(G) + mr_nu(G^c)"
    )
    conditional_complement_sum_upper: List[float] = Field(default_factory=list)
    conditional_nu_sum_lower: List[float] = Field(
        default_factory=list, description="Lower bounds on nu(G) + nu(G^c) under the delta-conjecture"
    )


# ============================================================================
# EVALUATORS
# ============================================================================

def mader_k_guarantee(n: int, m: int) -> int:
    """Largest k with n >= 2k - 1 and m >= (2k - 3)(n - k + 1) + 1."""
    if n < 1 or not 0 <= m <= n * (n - 1) // 2:
        raise DomainError(f"need n >= 1 and 0 <= m <= n(n-1)/2, got n = {n}, m = {m}")
    best = 1
    for k in range(2, (n + 1) // 2 + 1):
        if m >= (2 * k - 3) * (n - k + 1) + 1:
            best = k
    return best


def nu_lower_from_complement(n: int, m_c: int) -> Surd:
    """(n-1)/2 - sqrt(m_c/2); nu is strictly larger."""
    if n < 1 or not 0 <= m_c <= n * (n - 1) // 2:
        raise DomainError(f"need 0 <= m_c <= n(n-1)/2, got n = {n}, m_c = {m_c}")
    return Surd.make(Fraction(n - 1, 2), Fraction(-1, 2), 2 * m_c)


def wggc_bound(n: int) -> Surd:
    """(1 + 1/sqrt 2) n + 1, a strict upper bound on mr_nu(G) + mr_nu(G^c)."""
    if n < 4:
        raise DomainError(f"the complement-sum bound needs n >= 4, got {n}")
    return Surd.make(n + 1, Fraction(n, 2), 2)


def conditional_wggc_bounds(n: int) -> tuple:
    """(3n/2 + 1/2, sqrt(2) n + 1), both assuming the delta-conjecture."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return Surd.make(Fraction(3 * n + 1, 2)), Surd.make(1, n, 2)


def mitchel_lower(n: int, l_c: int) -> int:
    """n - 2 l(G^c) - 1; may be negative."""
    if not 0 <= l_c < n:
        raise DomainError(f"need 0 <= l_c < n, got l_c = {l_c}, n = {n}")
    return n - 2 * l_c - 1


def girth_nu_bound(delta: int, g: Girth, k_max: Optional[int] = None) -> List[BoundEntry]:
    """Girth-driven bounds, each at the largest k its clause allows."""
    if delta < 0:
        raise DomainError(f"need delta >= 0, got {delta}")
    k_max = config.GIRTH_K_MAX if k_max is None else k_max
    infinite = g == GIRTH_INFINITE

    def k_for(offset: int, step: int) -> int:
        return k_max if infinite else (int(g) - offset) // step

    out: List[BoundEntry] = []
    if delta >= 3:
        k = k_for(3, 4)
        if k >= 1:
            out.append(entry(
                "kuhn-osthus-a", Fraction((delta - 1) ** (k + 1), 192), STRICT,
                note=f"k = {k}",
            ))
        k = k_for(3, 8)
        if k >= 1:
            out.append(entry(
                "girth-mader", Fraction(delta * (delta - 1) ** k, 4), STRICT,
                note=f"k = {k}; minimum-degree ceiling at least delta(delta-1)^k",
            ))
    if delta >= KUHN_OSTHUS_DELTA_MIN:
        k = min(k_for(1, 4), delta // 20, k_max)
        if k >= 1:
            out.append(entry(
                "kuhn-osthus-b", Surd.make(0, Fraction(delta**k, 1152), delta), STRICT,
                note=f"k = {k}",
            ))
    return out


def forbidden_subgraph_bound(d: Rational, pattern: ForbiddenPattern) -> SymbolicBound:
    """nu > (c/4) d^e for an unspecified constant c; returns e and d^e."""
    if pattern.kind == "K":
        if pattern.s < 2 or pattern.s2 < pattern.s:
            raise DomainError(f"need 2 <= s <= s', got s = {pattern.s}, s' = {pattern.s2}")
        exponent = 1 + Fraction(1, 2 * (pattern.s - 1))
    elif pattern.kind == "C":
        if pattern.t < 2:
            raise DomainError(f"need t >= 2, got t = {pattern.t}")
        exponent = Fraction(pattern.t + 1, 2)
    else:
        raise DomainError(f"unknown forbidden pattern kind '{pattern.kind}'")
    if d < 0:
        raise DomainError(f"average degree must be non-negative, got {d}")
    magnitude = _as_float(d) ** float(exponent) if d else 0.0
    return SymbolicBound(
        exponent=str(exponent),
        magnitude=magnitude,
        statement=f"nu > c/4 * {magnitude:g} for {pattern.label()}-free graphs, c unspecified",
    )


def delta_conjecture_certificate(
    delta: int, g: Girth, forbidden: Optional[ForbiddenPattern] = None
) -> CertificateStatus:
    """Whether nu(G) >= delta(G) is certified from minimum degree and girth alone."""
    if g >= 11 and delta >= 4:
        return CertificateStatus(status="CERTIFIED", clause="a", detail="girth >= 11, delta >= 4")
    if 7 <= g <= 10 and delta >= 193:
        return CertificateStatus(status="CERTIFIED", clause="b", detail="girth 7..10, delta >= 193")
    if g in (5, 6) and delta >= KUHN_OSTHUS_DELTA_MIN:
        return CertificateStatus(status="CERTIFIED", clause="c", detail="girth 5..6, delta >= 8*10^6")
    if forbidden is not None:
        clause = "d" if forbidden.kind == "K" else "e"
        return CertificateStatus(
            status="CONDITIONAL",
            clause=clause,
            detail=f"{forbidden.label()}-free; holds once delta reaches an unspecified constant",
        )
    return CertificateStatus(status="NOT-CERTIFIED")


def colouring_bounds(chi: int, alpha: int, n: int) -> List[BoundEntry]:
    """Bounds from the chromatic and independence numbers."""
    if chi < 1 or not 1 <= alpha <= n:
        raise DomainError(f"need chi >= 1 and 1 <= alpha <= n, got chi = {chi}, alpha = {alpha}, n = {n}")
    return [
        entry(
            "nguyen-chromatic", Fraction(16 * chi, 49), STRICT,
            applies=chi >= 4,
            note="" if chi >= 4 else "recorded as written; counted only for chi >= 4",
        ),
        # n / ((2 - c) alpha) - 1 rationalised: n (172 - sqrt 5392) / (192 alpha) - 1
        entry(
            "balogh-kostochka",
            Surd.make(Fraction(172 * n, 192 * alpha) - 1, Fraction(-n, 192 * alpha), BK_RADICAND),
        ),
    ]


# ============================================================================
# REPORT
# ============================================================================

def _best(entries: List[BoundEntry]) -> BoundEntry:
    usable = [e for e in entries if e.applies and not e.conditional and not e.symbolic]
    best = usable[0]
    for e in usable[1:]:
        if e.surd > best.surd:
            best = e
    return best


def bound_report(
    g: Graph,
    minor_cap: Optional[int] = None,
    subgraph_cap: Optional[int] = None,
) -> BoundReport:
    """All nu lower bounds for g; oracle-backed entries only within their caps."""
    minor_cap = config.MINOR_CAP if minor_cap is None else minor_cap
    subgraph_cap = config.SUBGRAPH_CAP if subgraph_cap is None else subgraph_cap
    n, m = g.n, g.m
    comp = complement(g)
    m_c = comp.m
    stats = degree_stats(g)
    delta = stats.min_degree
    l_g = degeneracy(g).value
    l_c = degeneracy(comp).value
    gir = girth(g)

    entries: List[BoundEntry] = [
        entry("trivial", 0, note="nu is non-negative"),
        entry("complement-size", nu_lower_from_complement(n, m_c), STRICT, applies=n >= 2),
        entry("mitchel-degeneracy", mitchel_lower(n, l_c)),
    ]
    k = mader_k_guarantee(n, m)
    if k >= 2:
        entries.append(entry("mader-guarantee", k, note=f"G has a {k}-connected subgraph"))
    if n <= subgraph_cap:
        entries.append(entry("subgraph-connectivity", max_subgraph_connectivity(g, cap=subgraph_cap)))
    if n <= minor_cap:
        entries.append(entry("kappa-ceiling", ceiling(g, "kappa", cap=minor_cap).value))
        entries.append(entry(
            "avg-degree-ceiling",
            Fraction(ceiling(g, "avg-degree", cap=minor_cap).value) / 4,
            STRICT,
            applies=m > 0,
            note="" if m > 0 else "needs at least one edge",
        ))
        entries.append(entry("hadwiger", hadwiger_number(g, cap=minor_cap) - 1))
        entries.append(entry(
            "delta-conjecture-ceiling", ceiling(g, "delta", cap=minor_cap).value, conditional=True,
        ))
    entries.extend(girth_nu_bound(delta, gir))
    if n <= subgraph_cap:
        chi = chromatic_number(g, cap=subgraph_cap)
        alpha = independence_number(g, cap=subgraph_cap)
        entries.extend(colouring_bounds(chi, alpha, n))
        entries.append(entry("conjecture-chromatic", chi - 1, conditional=True,
                             note="conjectured; evidence only"))
        entries.append(entry("conjecture-independence", Fraction(n, alpha) - 1, conditional=True,
                             note="conjectured; evidence only"))
    entries.append(entry("delta-conjecture-min-degree", delta, conditional=True))
    entries.append(entry("delta-conjecture-degeneracy", l_g, conditional=True))

    pattern = None
    if m > 0 and not has_four_cycle(g):
        pattern = ForbiddenPattern(kind="C", t=2)
        for source, pat in (
            ("krivelevich-sudakov-a", ForbiddenPattern(kind="K", s=2, s2=2)),
            ("krivelevich-sudakov-b", pattern),
        ):
            sym = forbidden_subgraph_bound(stats.avg_degree, pat)
            entries.append(BoundEntry(
                source=source, relation=STRICT, symbolic=True,
                exact=f"c/4 * d^({sym.exponent})", note=sym.statement,
            ))

    best = _best(entries)
    nu_int = max(e.integer_floor() for e in entries
                 if e.applies and not e.conditional and not e.symbolic)
    logger.debug(f"bound report n={n} m={m}: best {best.exact} from {best.source}")
    return BoundReport(
        n=n,
        m=m,
        m_c=m_c,
        min_degree=delta,
        degeneracy=l_g,
        complement_degeneracy=l_c,
        girth=None if gir == GIRTH_INFINITE else int(gir),
        entries=entries,
        best_nu_lower=float(best.surd),
        best_nu_lower_exact=str(best.surd),
        best_source=best.source,
        nu_integer_lower=nu_int,
        mr_nu_upper=n - float(best.surd),
        certificates=[delta_conjecture_certificate(delta, gir, pattern)],
        complement_sum_upper=float(wggc_bound(n)) if n >= 4 else None,
        conditional_complement_sum_upper=[float(b) for b in conditional_wggc_bounds(n)],
        conditional_nu_sum_lower=[2 * n - float(b) for b in conditional_wggc_bounds(n)],
    )
