"""Independent oracles for the test suite.

Everything here deliberately avoids the library's own evaluation paths:
the 1-D maximizer uses the classic barycentric-weight form of the Lebesgue
function on a dense grid with local ternary refinement, the basis oracle
goes through gamma ratios (mpmath, 40 digits), and the special-function
references are either exact rationals or high-precision mpmath values.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

mpmath.mp.dps = 40


# ---------------------------------------------------------------------------
# 1-D Lebesgue function via barycentric weights


def lebesgue_1d_values(xs: np.ndarray, n: int) -> np.ndarray:
    """L(x) = sum_i |l_i(x)| for nodes j/n on [0, 1], vectorized over xs."""
    nodes = np.arange(n + 1) / n
    diff_matrix = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff_matrix, 1.0)
    w = 1.0 / np.prod(diff_matrix, axis=1)

    d = xs[:, None] - nodes[None, :]
    on_node = np.isclose(d, 0.0, atol=0.0)
    omega = np.prod(np.where(on_node, 1.0, d), axis=1)
    with np.errstate(divide="ignore"):
        inv = np.where(on_node, 0.0, np.abs(w)[None, :] / np.abs(d))
    L = np.abs(omega) * inv.sum(axis=1)
    L[on_node.any(axis=1)] = 1.0
    return L


def bruteforce_lambda_1d(n: int, step: float = 1e-6) -> float:
    """Dense-grid maximization of the 1-D Lebesgue function with local
    ternary refinement around the best grid point.

    By symmetry L(x) = L(1-x) it is enough to scan [0, 1/2].
    """
    if n == 1:
        return 1.0
    xs = np.arange(0.0, 0.5 + step, step)
    vals = lebesgue_1d_values(xs, n)
    k = int(np.argmax(vals))
    best = float(vals[k])
    lo = max(0.0, xs[k] - step)
    hi = min(0.5, xs[k] + step)

    def f(x: float) -> float:
        return float(lebesgue_1d_values(np.array([x]), n)[0])

    for _ in range(120):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) < f(m2):
            lo = m1
        else:
            hi = m2
    return max(best, f(0.5 * (lo + hi)))


# ---------------------------------------------------------------------------
# gamma-ratio route for the fundamental polynomials


def fundamental_poly_gamma(i, lam) -> float:
    """l_i(lam) = prod_s Gamma(n lam_s + 1) / (i_s! Gamma(n lam_s - i_s + 1)).

    Uses mpmath's reciprocal gamma, which is entire: a denominator pole
    yields an exact zero factor.
    """
    n = sum(i)
    acc = mpmath.mpf(1)
    for i_s, lam_s in zip(i, lam):
        x = mpmath.mpf(n) * mpmath.mpf(lam_s)
        acc *= mpmath.gamma(x + 1) * mpmath.rgamma(x - i_s + 1) / mpmath.factorial(i_s)
    return float(acc)


# ---------------------------------------------------------------------------
# high-precision scalar references


def mp_binom(a, b) -> mpmath.mpf:
    return mpmath.gamma(mpmath.mpf(a) + 1) * mpmath.rgamma(
        mpmath.mpf(b) + 1
    ) * mpmath.rgamma(mpmath.mpf(a) - mpmath.mpf(b) + 1)


def mp_gamma(x) -> mpmath.mpf:
    return mpmath.gamma(mpmath.mpf(x))


def mp_log_abs_gamma(x) -> float:
    return float(mpmath.log(abs(mpmath.gamma(mpmath.mpf(x)))))


def mp_digamma(x) -> float:
    return float(mpmath.digamma(mpmath.mpf(x)))


def euler_gamma_series(N: int = 400) -> float:
    """Euler-Mascheroni constant from the harmonic series with
    Euler-Maclaurin correction terms through N^-4."""
    h = math.fsum(1.0 / k for k in range(1, N + 1))
    return h - math.log(N) - 1.0 / (2 * N) + 1.0 / (12 * N**2) - 1.0 / (120 * N**4)
