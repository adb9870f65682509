"""
Covering-pair calculus for degeneracy pairs (h, k) of order n.

A pair covers when h + k <= n - 1 and the two Lick-White edge budgets
together reach n(n-1)/2. Every comparison here is exact integer
arithmetic; the square-root forms only exist for display.
"""

import logging
import math
from typing import List, NamedTuple, Tuple

from pydantic import BaseModel, ConfigDict, Field

from lab_errors import DomainError, NotACoveringSumError

logger = logging.getLogger(__name__)


class CoveringPair(BaseModel):
    """Degeneracy pair (h, k) of order n."""
    model_config = ConfigDict(frozen=True)

    h: int = Field(..., description="Degeneracy of G")
    k: int = Field(..., description="Degeneracy of the complement")
    n: int = Field(..., description="Order")


class PairClassification(BaseModel):
    is_covering: bool
    left_minimal: bool
    right_minimal: bool


class CoveringThreshold(NamedTuple):
    even_min: float
    odd_min: float


def _check_pair(h: int, k: int, n: int) -> None:
    if not (0 <= h < n and 0 <= k < n):
        raise DomainError(f"covering pairs need 0 <= h, k < n, got ({h}, {k}) with n = {n}")


def _budget(h: int, n: int) -> int:
    return h * n - h * (h + 1) // 2


def degeneracy_pair_excess(h: int, k: int, n: int) -> int:
    """Edge budget of (h, k) minus n(n-1)/2; non-negative iff the size condition holds."""
    _check_pair(h, k, n)
    return _budget(h, n) + _budget(k, n) - n * (n - 1) // 2


def _covers(h: int, k: int, n: int) -> bool:
    return h + k <= n - 1 and _budget(h, n) + _budget(k, n) >= n * (n - 1) // 2


def is_covering_pair(p: CoveringPair) -> bool:
    _check_pair(p.h, p.k, p.n)
    return _covers(p.h, p.k, p.n)


def classify_pair(p: CoveringPair) -> PairClassification:
    """Covering flag plus left/right minimality (a 0 coordinate counts as minimal)."""
    _check_pair(p.h, p.k, p.n)
    if not _covers(p.h, p.k, p.n):
        return PairClassification(is_covering=False, left_minimal=False, right_minimal=False)
    return PairClassification(
        is_covering=True,
        left_minimal=p.h == 0 or not _covers(p.h - 1, p.k, p.n),
        right_minimal=p.k == 0 or not _covers(p.h, p.k - 1, p.n),
    )


def balanced_pair(r: int, n: int) -> CoveringPair:
    return CoveringPair(h=(r + 1) // 2, k=r // 2, n=n)


def is_covering_sum(r: int, n: int) -> bool:
    """r is a covering sum iff its balanced split covers."""
    if not 0 <= r < n:
        raise DomainError(f"covering sums need 0 <= r < n, got r = {r}, n = {n}")
    return is_covering_pair(balanced_pair(r, n))


def meets_threshold(r: int, n: int) -> bool:
    """Closed-form test r >= 2n-1-sqrt(2n^2-2n+1) (even r) or r >= 2n-1-sqrt(2n^2-2n) (odd r)."""
    if not 0 <= r < n:
        raise DomainError(f"need 0 <= r < n, got r = {r}, n = {n}")
    gap = 2 * n - 1 - r
    radicand = 2 * n * n - 2 * n + (1 if r % 2 == 0 else 0)
    return gap * gap <= radicand


def covering_sum_threshold(n: int) -> CoveringThreshold:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return CoveringThreshold(
        even_min=2 * n - 1 - math.sqrt(2 * n * n - 2 * n + 1),
        odd_min=2 * n - 1 - math.sqrt(2 * n * n - 2 * n),
    )


def branch_ceilings(n: int) -> Tuple[int, int]:
    """Integer ceilings of the even and odd threshold branches."""
    return (
        2 * n - 1 - math.isqrt(2 * n * n - 2 * n + 1),
        2 * n - 1 - math.isqrt(2 * n * n - 2 * n),
    )


def ng_range(n: int) -> Tuple[int, int]:
    """Attainable range of l(G) + l(G^c) over graphs of order n."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return branch_ceilings(n)[0], n - 1


def minimal_k_pair_for_sum(n: int, r: int) -> CoveringPair:
    """Covering pair with h + k = r and the smallest k."""
    if not is_covering_sum(r, n):
        raise NotACoveringSumError(f"{r} is not a covering sum of order {n}")
    for k in range(0, r // 2 + 1):
        h = r - k
        if h < n and _covers(h, k, n):
            return CoveringPair(h=h, k=k, n=n)
    # the balanced split covers, so the loop always returns
    raise NotACoveringSumError(f"{r} is not a covering sum of order {n}")


def covering_pairs(n: int) -> List[CoveringPair]:
    """All covering pairs of order n, sorted by (h, k)."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return [
        CoveringPair(h=h, k=k, n=n)
        for h in range(n)
        for k in range(n - h)
        if _covers(h, k, n)
    ]
