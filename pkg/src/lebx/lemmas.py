"""Combinatorial identities and auxiliary inequalities as lhs/rhs checks.

Each evaluator returns an IdentityCheck carrying both sides, so property
sweeps can report the worst relative error rather than a bare boolean.
Sums with an upper limit below the lower limit are empty (and products 1)
throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, PoleError
from .specfun import gbinom, log_gamma, _sinpi

IDENTITY_TOL = 1e-10
INEQUALITY_TOL = 1e-9


@dataclass(frozen=True)
class IdentityCheck:
    lhs: float
    rhs: float
    rel_err: float
    holds: bool


def _rel_err(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def identity(lhs: float, rhs: float, tol: float = IDENTITY_TOL) -> IdentityCheck:
    r = _rel_err(lhs, rhs)
    return IdentityCheck(lhs, rhs, r, r <= tol)


def inequality(lhs: float, rhs: float, tol: float = INEQUALITY_TOL) -> IdentityCheck:
    return IdentityCheck(lhs, rhs, _rel_err(lhs, rhs), lhs <= rhs + tol)


def _recip(value: float, what: str) -> float:
    if value == 0.0:
        raise PoleError(f"{what} vanishes; its reciprocal is a pole of the identity")
    return 1.0 / value


def lemma3(a: float, b: float, tol: float = IDENTITY_TOL) -> IdentityCheck:
    """1/(b C(a-1,b)) - 1/((b+1) C(a,b+1)) = 1/(b C(a,b))."""
    if b == 0:
        raise DomainError("b must be nonzero")
    lhs = _recip(b * gbinom(a - 1.0, b), "b*C(a-1,b)") - _recip(
        (b + 1.0) * gbinom(a, b + 1.0), "(b+1)*C(a,b+1)"
    )
    rhs = _recip(b * gbinom(a, b), "b*C(a,b)")
    return identity(lhs, rhs, tol)


def lemma4_dstar(p: int, m: int, x: float, y: float, tol: float = IDENTITY_TOL) -> IdentityCheck:
    """Two-sum telescoping identity:

    sum_{k=0}^{p+1} C(x+1,k)/(y C(m-k,y)) - sum_{k=0}^{p} C(x,k)/((y+1) C(m-k,y+1))
      = sum_{k=0}^{p} 2 C(x,k)/(y C(m-k,y)) + C(x,p+1)/(y C(m-p-1,y)).
    """
    if p < 0:
        raise DomainError("p must be >= 0")
    if m <= p + 1:
        raise DomainError("needs m > p + 1")
    lhs = math.fsum(
        gbinom(x + 1.0, k) * _recip(y * gbinom(m - k, y), "y*C(m-k,y)")
        for k in range(p + 2)
    ) - math.fsum(
        gbinom(x, k) * _recip((y + 1.0) * gbinom(m - k, y + 1.0), "(y+1)*C(m-k,y+1)")
        for k in range(p + 1)
    )
    rhs = math.fsum(
        2.0 * gbinom(x, k) * _recip(y * gbinom(m - k, y), "y*C(m-k,y)")
        for k in range(p + 1)
    ) + gbinom(x, p + 1) * _recip(y * gbinom(m - p - 1, y), "y*C(m-p-1,y)")
    return identity(lhs, rhs, tol)


def lemma5_dstarstar(
    m: int, q: int, r: int, x: float, y: float, tol: float = IDENTITY_TOL
) -> IdentityCheck:
    """Double-reciprocal telescoping identity:

    sum_{k=q}^{m-1-r} 1/((x+1) C(m-k,x+1) y C(k,y))
      - sum_{k=q+1}^{m-r} 1/(x C(m-k,x) (y+1) C(k,y+1))
      = 1/(x C(r,x) y C(m-r,y)) - 1/(x C(m-q,x) y C(q,y)).
    """
    if q > m - 1 - r:
        raise DomainError("needs q <= m - 1 - r")
    lhs = math.fsum(
        _recip(
            (x + 1.0) * gbinom(m - k, x + 1.0) * y * gbinom(k, y),
            "(x+1)*C(m-k,x+1)*y*C(k,y)",
        )
        for k in range(q, m - r)
    ) - math.fsum(
        _recip(
            x * gbinom(m - k, x) * (y + 1.0) * gbinom(k, y + 1.0),
            "x*C(m-k,x)*(y+1)*C(k,y+1)",
        )
        for k in range(q + 1, m - r + 1)
    )
    rhs = _recip(x * gbinom(r, x) * y * gbinom(m - r, y), "x*C(r,x)*y*C(m-r,y)") - _recip(
        x * gbinom(m - q, x) * y * gbinom(q, y), "x*C(m-q,x)*y*C(q,y)"
    )
    return identity(lhs, rhs, tol)


def lemma6_dtriplestar(
    p: int, q: int, m: int, x: float, y: float, tol: float = IDENTITY_TOL
) -> IdentityCheck:
    """Product-pair telescoping identity:

    sum_{k=q}^{p} C(x,k) C(y,m-k) - sum_{k=q-1}^{p-1} C(x-1,k) C(y+1,m-k)
      = C(x-1,p) C(y,m-p) - C(x-1,q-1) C(y,m-q+1).
    """
    if q > p + 1:
        raise DomainError("needs q <= p + 1")
    lhs = math.fsum(gbinom(x, k) * gbinom(y, m - k) for k in range(q, p + 1)) - math.fsum(
        gbinom(x - 1.0, k) * gbinom(y + 1.0, m - k) for k in range(q - 1, p)
    )
    rhs = gbinom(x - 1.0, p) * gbinom(y, m - p) - gbinom(x - 1.0, q - 1) * gbinom(
        y, m - q + 1
    )
    return identity(lhs, rhs, tol)


def lemma7_monotone(a: float, b: float, alpha_grid, slack: float = 1e-12) -> bool:
    """Monotonicity of g(alpha) = Gamma(a+alpha)/Gamma(b+alpha).

    Nondecreasing when a >= b, nonincreasing when b >= a (digamma is
    increasing, so the sign of g' is the sign of a - b).
    """
    grid = sorted(float(v) for v in alpha_grid)
    if not grid:
        raise DomainError("empty alpha grid")
    vals = []
    for al in grid:
        if a + al <= 0.0 or b + al <= 0.0:
            raise DomainError(f"gamma argument not positive at alpha = {al}")
        vals.append(math.exp(log_gamma(a + al) - log_gamma(b + al)))
    def ok(diffs_nonneg: bool) -> bool:
        for u, v in zip(vals, vals[1:]):
            d = (v - u) if diffs_nonneg else (u - v)
            if d < -slack * max(abs(u), abs(v), 1.0):
                return False
        return True
    if a >= b:
        return ok(True)
    return ok(False)


def lemma17_phi(alpha: float, m: int, tol: float = INEQUALITY_TOL) -> IdentityCheck:
    """Phi(alpha, m) = (sin pi alpha / pi) Gamma(1+alpha) Gamma(m-alpha) / m!.

    For m >= 2:  Phi <= alpha (1-alpha) 2^alpha / m^(1+alpha).
    For m = 1 the value is exactly alpha (checked as an identity).
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    phi = (
        _sinpi(alpha)
        / math.pi
        * math.exp(log_gamma(1.0 + alpha) + log_gamma(m - alpha) - log_gamma(m + 1.0))
    )
    if m == 1:
        return identity(phi, alpha, IDENTITY_TOL)
    bound = alpha * (1.0 - alpha) * 2.0 ** alpha / m ** (1.0 + alpha)
    return inequality(phi, bound, tol)


def lemma18_phi_small(alpha: float, m: float, tol: float = INEQUALITY_TOL) -> IdentityCheck:
    """alpha / m^alpha <= 1 / (e ln m) for m > 1 (maximized at alpha = 1/ln m).

    Checked for all alpha > 0: the bound is attained strictly inside (0, 1)
    for m > e, so restricting to alpha >= 1 would miss the sharp case.
    """
    if alpha <= 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if m <= 1.0:
        raise DomainError(f"m must exceed 1, got {m}")
    return inequality(alpha / m ** alpha, 1.0 / (math.e * math.log(m)), tol)


def lemma19_powsum(n: int, tol: float = INEQUALITY_TOL) -> IdentityCheck:
    """sum_{s=1}^{n} 2^s / s <= 2^(n+1)/n + 2^(n+1)/(n-3)^2 for n >= 4."""
    if n < 4:
        raise DomainError(f"needs n >= 4, got {n}")
    lhs = math.fsum(2.0 ** s / s for s in range(1, n + 1))
    rhs = 2.0 ** (n + 1) / n + 2.0 ** (n + 1) / (n - 3) ** 2
    return inequality(lhs, rhs, tol)


def lemma25_upsilon(n: int, tol: float = INEQUALITY_TOL) -> IdentityCheck:
    """sum_{s=2}^{n} C(n,s)/(s-1) <= (2^(n+1)/n) (1 + 15/(n-3)) for n >= 4."""
    if n < 4:
        raise DomainError(f"needs n >= 4, got {n}")
    lhs = math.fsum(math.comb(n, s) / (s - 1) for s in range(2, n + 1))
    rhs = 2.0 ** (n + 1) / n * (1.0 + 15.0 / (n - 3))
    return inequality(lhs, rhs, tol)


def c0_constant() -> float:
    """((ln 2)^2 + 12 ln 2 + 28) / (4 ln 2 + 12); provably below 2.5."""
    l2 = math.log(2.0)
    return (l2 * l2 + 12.0 * l2 + 28.0) / (4.0 * l2 + 12.0)
