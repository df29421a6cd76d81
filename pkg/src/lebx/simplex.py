"""Equispaced simplex nodes, fundamental Lagrange polynomials, Lebesgue function.

A degree-n node grid on the d-simplex is indexed by (d+1)-tuples of
nonnegative integers summing to n; the node of index i has barycentric
coordinates i/n.  The fundamental polynomial anchored at i factors across
coordinates,

    l_i(lam) = prod_s  prod_{t<i_s} (lam_s - t/n) * n / (t + 1),

i.e. a product of generalized binomial coefficients C(n*lam_s, i_s).  The
Lebesgue function sums |l_i| over the whole grid; it is evaluated from
per-coordinate prefix products so the cost is one multiply per index after
O(n*d) preprocessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, MissingNodeError, ResourceLimitError

# Grid-size guard: C(n+d, d) must stay below this unless the caller raises it.
DEFAULT_NODE_CAP = 2_000_000

# Barycentric inputs whose coordinate sum deviates from 1 by more than this
# are rejected; smaller deviations are renormalized away.
BARY_SUM_TOL = 1e-9

# Above this degree the direct prefix products (magnitudes up to ~4^n) leave
# double range and evaluation moves to the log domain.
LOG_SWITCH = 400


def simplex_node_count(n: int, d: int) -> int:
    return math.comb(n + d, d)


@lru_cache(maxsize=64)
def _index_array(n: int, d: int) -> np.ndarray:
    """All multi-indices of degree n in d+1 entries, first entry descending."""

    def build(total: int, slots: int) -> list[tuple[int, ...]]:
        if slots == 1:
            return [(total,)]
        out = []
        for first in range(total, -1, -1):
            for rest in build(total - first, slots - 1):
                out.append((first,) + rest)
        return out

    arr = np.array(build(n, d + 1), dtype=np.int64)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class NodeSet:
    """Deterministic enumeration of the degree-n multi-indices for one grid."""

    n: int
    d: int
    indices: np.ndarray

    @property
    def cardinality(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterable[tuple[int, ...]]:
        return (tuple(int(v) for v in row) for row in self.indices)


def enumerate_multi_indices(n: int, d: int, cap: int = DEFAULT_NODE_CAP) -> NodeSet:
    """All multi-indices of the degree-n grid, each exactly once.

    The order is lexicographic with the leading coordinate descending, e.g.
    (2,0), (1,1), (0,2) for n=2, d=1; it is the summation order used
    everywhere downstream.
    """
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    count = simplex_node_count(n, d)
    if count > cap:
        raise ResourceLimitError(
            f"node grid has C({n + d},{d}) = {count} indices, above the cap {cap}"
        )
    return NodeSet(n=n, d=d, indices=_index_array(n, d))


def _check_multi_index(i: Sequence[int]) -> tuple[int, ...]:
    entries = tuple(int(v) for v in i)
    if len(entries) < 2:
        raise DomainError("a multi-index needs at least 2 entries (d >= 1)")
    if any(v < 0 for v in entries):
        raise DomainError(f"multi-index entries must be nonnegative: {entries}")
    return entries


def node_of(i: Sequence[int]) -> tuple[float, ...]:
    """Barycentric coordinates i/n of the node labeled by multi-index i."""
    entries = _check_multi_index(i)
    n = sum(entries)
    if n <= 0:
        raise DomainError("node_of needs a positive-degree multi-index")
    return tuple(v / n for v in entries)


def as_barycentric(coords: Sequence[float]) -> np.ndarray:
    """Validate and renormalize a barycentric coordinate tuple.

    Sums within BARY_SUM_TOL of 1 are renormalized; anything further off is
    rejected rather than silently fixed.
    """
    arr = np.array(coords, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise DomainError("barycentric point needs at least 2 coordinates")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"non-finite barycentric coordinates: {coords}")
    s = arr.sum()
    if abs(s - 1.0) > BARY_SUM_TOL:
        raise DomainError(f"barycentric coordinates sum to {s}, not 1")
    arr /= s
    if np.any(arr < -1e-12):
        raise DomainError(f"negative barycentric coordinate in {coords}")
    np.clip(arr, 0.0, 1.0, out=arr)
    return arr


def _prefix_products(lam_s: float, n: int) -> np.ndarray:
    """G[k] = prod_{t<k} (lam_s - t/n) * n / (t+1) for k = 0..n.

    G[k] equals the generalized binomial C(n*lam_s, k); an exact zero factor
    (lam_s hitting a node line) propagates as an exact zero.
    """
    G = np.empty(n + 1)
    G[0] = 1.0
    if n == 0:
        return G
    t = np.arange(n, dtype=float)
    factors = (lam_s - t / n) * n / (t + 1.0)
    np.cumprod(factors, out=G[1:])
    return G


def _log_prefix(lam_s: float, n: int) -> np.ndarray:
    """log|G[k]| with -inf marking exact zeros (log-domain path, large n)."""
    out = np.empty(n + 1)
    out[0] = 0.0
    t = np.arange(n, dtype=float)
    factors = (lam_s - t / n) * n / (t + 1.0)
    with np.errstate(divide="ignore"):
        out[1:] = np.cumsum(np.log(np.abs(factors)))
    return out


def fundamental_poly(i: Sequence[int], lam: Sequence[float]) -> float:
    """l_i(lam): 1 at the node of i, 0 at every other node of its grid."""
    entries = _check_multi_index(i)
    n = sum(entries)
    arr = as_barycentric(lam)
    if arr.size != len(entries):
        raise DomainError(
            f"point has {arr.size} coordinates but the index has {len(entries)}"
        )
    if n == 0:
        return 1.0
    if n <= LOG_SWITCH:
        p = 1.0
        for s, k in enumerate(entries):
            for t in range(k):
                p *= (arr[s] - t / n) * n / (t + 1.0)
        return p
    # log-domain accumulation for very high degree
    sign = 1
    log_abs = 0.0
    for s, k in enumerate(entries):
        for t in range(k):
            f = (arr[s] - t / n) * n / (t + 1.0)
            if f == 0.0:
                return 0.0
            if f < 0.0:
                sign = -sign
            log_abs += math.log(abs(f))
    return sign * math.exp(log_abs)


def _gathered_products(
    lam: np.ndarray, n: int, indices: np.ndarray, signed: bool
) -> np.ndarray:
    """Per-index products of the prefix arrays, in enumeration order."""
    cols = [_prefix_products(lam[s], n)[indices[:, s]] for s in range(lam.size)]
    terms = cols[0].copy()
    for c in cols[1:]:
        terms *= c
    if not signed:
        np.abs(terms, out=terms)
    return terms


def lebesgue_function(
    lam: Sequence[float],
    n: int,
    d: int | None = None,
    cap: int = DEFAULT_NODE_CAP,
) -> float:
    """Sum of |l_i(lam)| over the full degree-n grid.

    Accumulation is compensated (error-free transformation via math.fsum) in
    the fixed enumeration order, so results are bit-stable across runs.
    """
    arr = as_barycentric(lam)
    if d is not None and arr.size != d + 1:
        raise DomainError(f"point has {arr.size} coordinates, expected {d + 1}")
    dd = arr.size - 1
    if n == 0:
        return 1.0
    ns = enumerate_multi_indices(n, dd, cap=cap)
    if n <= LOG_SWITCH:
        terms = _gathered_products(arr, n, ns.indices, signed=False)
        return math.fsum(terms.tolist())
    logs = [_log_prefix(arr[s], n)[ns.indices[:, s]] for s in range(arr.size)]
    logterms = logs[0]
    for l in logs[1:]:
        logterms = logterms + l
    m = float(np.max(logterms))
    if m == -math.inf:
        return 0.0
    scaled = math.fsum(np.exp(logterms - m).tolist())
    return math.exp(m + math.log(scaled))


def basis_sum(lam: Sequence[float], n: int, d: int, cap: int = DEFAULT_NODE_CAP) -> float:
    """Signed sum of all l_i(lam); exactly 1 for a true partition of unity."""
    arr = as_barycentric(lam)
    if arr.size != d + 1:
        raise DomainError(f"point has {arr.size} coordinates, expected {d + 1}")
    if n == 0:
        return 1.0
    ns = enumerate_multi_indices(n, d, cap=cap)
    terms = _gathered_products(arr, n, ns.indices, signed=True)
    return math.fsum(terms.tolist())


def interpolate(
    values: Mapping[tuple[int, ...], float],
    lam: Sequence[float],
    cap: int = DEFAULT_NODE_CAP,
) -> float:
    """Evaluate the interpolating polynomial given node values f(a_i).

    `values` must cover every index of the grid inferred from its keys;
    spare keys are ignored.
    """
    if not values:
        raise MissingNodeError("empty node-value map")
    first = next(iter(values))
    n = sum(first)
    d = len(first) - 1
    arr = as_barycentric(lam)
    if arr.size != d + 1:
        raise DomainError(f"point has {arr.size} coordinates, expected {d + 1}")
    ns = enumerate_multi_indices(n, d, cap=cap)
    fvals = np.empty(ns.cardinality)
    for row, idx in enumerate(ns):
        try:
            fvals[row] = values[idx]
        except KeyError:
            raise MissingNodeError(f"no value for node index {idx}") from None
    if n == 0:
        return float(fvals[0])
    terms = _gathered_products(arr, n, ns.indices, signed=True)
    terms *= fvals
    return math.fsum(terms.tolist())
