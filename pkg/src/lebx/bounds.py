"""Closed-form bound and asymptote evaluators for the Lebesgue constant.

Powers of 2 switch to a log-domain route above n = 60 so that large-n
sweeps neither overflow nor lose the ratios.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

from .errors import DomainError

LOG2 = math.log(2.0)
_LOG_SWITCH = 60
_MAX_LOG = math.log(sys.float_info.max)


def _pow2(e: float) -> float:
    if e <= _LOG_SWITCH:
        return 2.0 ** e
    le = e * LOG2
    if le >= _MAX_LOG:
        raise OverflowError(f"2^{e} exceeds double range")
    return math.exp(le)


@dataclass(frozen=True)
class Theorem2Bound:
    bound: float
    mu_cap: float


@dataclass(frozen=True)
class BoundReport:
    """One row of a bound table: the estimate next to every closed form."""

    n: int
    d: int
    lambda_est: float | None
    theorem2: float | None
    mu_cap: float | None
    bos: float
    turetskii: float | None
    ratios: dict[str, float] = field(default_factory=dict)


def mu_cap(n: int) -> float:
    """Cap on the vanishing correction term of the main triangle bound:

    3 e n (ln n)^3 / 2^(n/3) + e n^2 ln n / 2^n   (-> 0 as n grows).
    """
    if n < 4:
        raise DomainError(f"needs n >= 4, got {n}")
    ln = math.log(n)
    t1 = 3.0 * math.e * n * ln ** 3 * math.exp(-(n / 3.0) * LOG2)
    t2 = math.e * n * n * ln * math.exp(-n * LOG2)
    return t1 + t2


def theorem2_bound(n: int) -> Theorem2Bound:
    """Main explicit upper bound for the triangle Lebesgue constant:

    (7 + mu_n) * 2^(n+1) / (e n (ln n - ln 2)) * (1 + 15/(n-3)),  n >= 4.
    """
    if n < 4:
        raise DomainError(f"needs n >= 4, got {n}")
    mu = mu_cap(n)
    envelope = _pow2(n + 1) / (math.e * n * (math.log(n) - LOG2))
    return Theorem2Bound(bound=(7.0 + mu) * envelope * (1.0 + 15.0 / (n - 3)), mu_cap=mu)


def turetskii_asymptote(n: int) -> float:
    """Leading-order size of the 1-D constant: 2^(n+1) / (e n ln n)."""
    if n < 2:
        raise DomainError(f"needs n >= 2, got {n}")
    return _pow2(n + 1) / (math.e * n * math.log(n))


def bos_bound(n: int) -> float:
    """Dimension-independent bound C(2n-1, n), exact integer up to n = 500."""
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    if n <= 500:
        return float(math.comb(2 * n - 1, n))
    lg = math.lgamma(2 * n) - math.lgamma(n + 1) - math.lgamma(n)
    if lg >= _MAX_LOG:
        raise OverflowError(f"C({2 * n - 1},{n}) exceeds double range")
    return math.exp(lg)


def rate_envelope(n: int, c: float) -> float:
    """c * 2^n / (n ln n), the two-sided growth envelope with constant c."""
    if n < 2:
        raise DomainError(f"needs n >= 2, got {n}")
    if c <= 0.0:
        raise DomainError(f"needs c > 0, got {c}")
    return c * _pow2(n) / (n * math.log(n))
