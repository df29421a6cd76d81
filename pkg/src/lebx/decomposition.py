"""Node-offset parametrization, the six partition sums, and reduction checks.

A point of the triangle (d = 2) is written n*lam_s = r_s + alpha_s with
integer cell indices r_1 + r_2 + r_3 = n - 1 and fractional parts
alpha_1 in [-1, 1], alpha_2, alpha_3 in [0, 1], alpha_1 + alpha_2 + alpha_3 = 1.
In these coordinates the Lebesgue function splits into six sums S_1..S_6
(S_2 in three parts) over index regions that tile the full grid.

The regions are stored as data (see region_table): per sum, an outer i_2 row
range and an inner i_1- or i_3-range affine in i_2.  Rather than trusting
the range table, every partition_sums call at n <= 30 validates structurally
that the regions are disjoint and exhaustive.  The tiling is valid whenever
r_3 <= r_1 + 1, which holds for every point whose largest coordinate is
lambda_1 (the symmetry-canonical representative); partition_sums raises
PartitionError outside that domain rather than summing a broken cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HypothesisError, PartitionError
from .simplex import as_barycentric, lebesgue_function, simplex_node_count
from .specfun import GAMMA_POLE, log_gamma, signed_gamma

# Structural tiling validation runs on every partition_sums call up to here.
VALIDATE_LIMIT = 30


def _alpha_sum_tol(n: int) -> float:
    return 1e-12 + 4e-16 * n


@dataclass(frozen=True)
class NodeOffset:
    """The (r, alpha) split n*lam_s = r_s + alpha_s of a triangle point."""

    r: tuple[int, int, int]
    alpha: tuple[float, float, float]
    n: int

    def __post_init__(self) -> None:
        r, a, n = self.r, self.alpha, self.n
        if n < 1:
            raise DomainError(f"degree must be >= 1, got {n}")
        if len(r) != 3 or len(a) != 3:
            raise DomainError("NodeOffset is specific to the triangle (3 entries)")
        if any(int(v) != v or v < 0 for v in r):
            raise DomainError(f"cell indices must be nonnegative integers: {r}")
        if sum(r) != n - 1:
            raise DomainError(f"cell indices {r} must sum to n - 1 = {n - 1}")
        if not (-1.0 <= a[0] <= 1.0):
            raise DomainError(f"alpha_1 = {a[0]} outside [-1, 1]")
        if not (0.0 <= a[1] <= 1.0 and 0.0 <= a[2] <= 1.0):
            raise DomainError(f"alpha_2, alpha_3 = {a[1]}, {a[2]} outside [0, 1]")
        if abs(a[0] + a[1] + a[2] - 1.0) > _alpha_sum_tol(n):
            raise DomainError(f"alpha = {a} must sum to 1")
        for rs, als in zip(r, a):
            x = (rs + als) / n
            if x < -1e-12 or x > 1.0 + 1e-12:
                raise DomainError(f"reconstructed coordinate {x} outside [0, 1]")

    def coordinate_numerators(self) -> tuple[float, float, float]:
        """The three values n*lam_s = r_s + alpha_s."""
        return tuple(rs + als for rs, als in zip(self.r, self.alpha))

    def barycentric(self) -> np.ndarray:
        return as_barycentric([x / self.n for x in self.coordinate_numerators()])

    def shifted(self) -> "NodeOffset":
        """The offset (r_1 - 1, r_2, r_3 + 1) with the same fractional parts."""
        r1, r2, r3 = self.r
        if r1 < 1:
            raise DomainError("cannot shift an offset with r_1 = 0")
        return NodeOffset((r1 - 1, r2, r3 + 1), self.alpha, self.n)


@dataclass(frozen=True)
class PartitionSums:
    """The six sums; s2 is accumulated exactly as s2_parts[0]+s2_parts[1]+s2_parts[2]."""

    s1: float
    s2: float
    s3: float
    s4: float
    s5: float
    s6: float
    s2_parts: tuple[float, float, float]

    def as_tuple(self) -> tuple[float, ...]:
        return (self.s1, self.s2, self.s3, self.s4, self.s5, self.s6)

    def total(self) -> float:
        return math.fsum(self.as_tuple())


@dataclass(frozen=True)
class DeltaVector:
    """Componentwise S_k differences between an offset and its shift."""

    delta: tuple[float, float, float, float, float, float]

    def total(self) -> float:
        return math.fsum(self.delta)


@dataclass(frozen=True)
class ReductionCheck:
    lhs: float
    rhs: float
    holds: bool


def offsets_of(lam, n: int) -> NodeOffset:
    """Split a triangle point into its (r, alpha) cell parametrization.

    Convention: r_2 and r_3 are floors of n*lam_2 and n*lam_3 (so their
    fractional parts live in [0, 1)); r_1 takes the remainder of the
    n - 1 budget and alpha_1 = n*lam_1 - r_1 lands in (-1, 1].  When both
    lam_2 and lam_3 sit on node lines with nothing left for r_1, one unit
    is handed back (to r_3 first), the only case producing alpha = 1 there.
    """
    arr = as_barycentric(lam)
    if arr.size != 3:
        raise DomainError("offsets_of is defined for the triangle (d = 2) only")
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    x2 = n * arr[1]
    x3 = n * arr[2]
    r2 = int(math.floor(x2))
    r3 = int(math.floor(x3))
    if r2 + r3 >= n:
        if r3 >= 1:
            r3 -= 1
        else:
            r2 -= 1
    r1 = n - 1 - r2 - r3
    alpha = (n * arr[0] - r1, x2 - r2, x3 - r3)
    return NodeOffset((r1, r2, r3), alpha, n)


def term_factor(i_s: int, r_s: int, alpha_s: float) -> float:
    """Single-coordinate basis magnitude Gamma(x+1) / (i_s! |Gamma(x-i_s+1)|).

    x = r_s + alpha_s.  A pole of the denominator gamma means the whole
    basis term vanishes, so the factor is 0 there.
    """
    if i_s < 0:
        raise DomainError(f"index must be nonnegative, got {i_s}")
    x = r_s + alpha_s
    g = signed_gamma(x - i_s + 1.0)
    if g is GAMMA_POLE:
        return 0.0
    if x + 1.0 <= 0.0:
        raise DomainError(f"numerator gamma argument {x + 1.0} is not positive")
    return math.exp(log_gamma(x + 1.0) - log_gamma(i_s + 1.0) - g.log_abs)


def _abs_coeff_array(x: float, n: int) -> np.ndarray:
    """|C(x, k)| for k = 0..n via the same prefix recurrence as the basis."""
    out = np.empty(n + 1)
    out[0] = 1.0
    if n:
        t = np.arange(n, dtype=float)
        np.cumprod((x - t) / (t + 1.0), out=out[1:])
    return np.abs(out)


# ---------------------------------------------------------------------------
# Region data: six sums as (outer i_2 range, inner variable, inner range).
# Inner bounds are affine in i_2: (const, coeff) means const + coeff * i_2.


def region_table(n: int, r1: int, r2: int, r3: int) -> dict[str, tuple]:
    """Inclusive index ranges of the six sums for one (n, r) configuration.

    Entry format: (i2_lo, i2_hi, inner_var, lo(const, coeff), hi(const, coeff)).
    Empty ranges (hi < lo) contribute empty sums.
    """
    return {
        "s1": (0, r2, "i3", (0, 0), (r3, 0)),
        "s2_1": (n - r1, n - r3, "i1", (n - r3, -1), (n, -1)),
        "s2_2": (n - r3 + 1, n, "i1", (0, 0), (n, -1)),
        "s2_3": (r2 + 1, n - r1 - 1, "i1", (n - r3, -1), (r1, 0)),
        "s3": (0, r2, "i1", (0, 0), (r1, 0)),
        "s4": (0, r2 - 1, "i3", (r3 + 1, 0), (n - r1 - 1, -1)),
        "s5": (r2 + 1, n - r1 - 1, "i3", (0, 0), (n - r1 - 1, -1)),
        "s6": (r2 + 1, n - r3 - 1, "i1", (0, 0), (n - r3 - 1, -1)),
    }


def _region_rows(n: int, spec: tuple) -> list[tuple[int, int, int]]:
    """Materialize one region as (i1, i2, i3) triples in row-major order."""
    i2_lo, i2_hi, var, (lo_c, lo_m), (hi_c, hi_m) = spec
    rows: list[tuple[int, int, int]] = []
    for i2 in range(max(i2_lo, 0), min(i2_hi, n) + 1):
        lo = max(lo_c + lo_m * i2, 0)
        hi = min(hi_c + hi_m * i2, n - i2)
        for inner in range(lo, hi + 1):
            if var == "i1":
                rows.append((inner, i2, n - i2 - inner))
            else:
                rows.append((n - i2 - inner, i2, inner))
    return rows


def _validate_partition(n: int, regions: dict[str, list[tuple[int, int, int]]]) -> None:
    seen: set[tuple[int, int, int]] = set()
    total = 0
    for name, rows in regions.items():
        for triple in rows:
            if min(triple) < 0:
                raise PartitionError(f"region {name} produced negative index {triple}")
            if triple in seen:
                raise PartitionError(f"index {triple} covered twice (in {name})")
            seen.add(triple)
        total += len(rows)
    expect = simplex_node_count(n, 2)
    if total != expect:
        raise PartitionError(
            f"regions cover {total} of {expect} indices for this offset"
        )


def partition_sums(o: NodeOffset, validate: bool | None = None) -> PartitionSums:
    """Evaluate S_1..S_6 (and the S_2 split) at a node offset.

    The region cover is checked structurally (disjoint and exhaustive) for
    n <= 30 or when validate=True; a broken cover raises PartitionError.
    """
    n = o.n
    r1, r2, r3 = o.r
    x1, x2, x3 = o.coordinate_numerators()
    table = region_table(n, r1, r2, r3)
    regions = {name: _region_rows(n, spec) for name, spec in table.items()}
    if validate or (validate is None and n <= VALIDATE_LIMIT):
        _validate_partition(n, regions)
    elif r3 > r1 + 1:
        # outside the tiling's validity domain; the structural check above
        # would catch this, so do not let large-n calls skip past it
        raise PartitionError(
            f"region table does not tile for r = {o.r} (needs r_3 <= r_1 + 1)"
        )
    a1 = _abs_coeff_array(x1, n)
    a2 = _abs_coeff_array(x2, n)
    a3 = _abs_coeff_array(x3, n)

    def region_sum(rows: list[tuple[int, int, int]]) -> float:
        if not rows:
            return 0.0
        idx = np.array(rows, dtype=np.int64)
        terms = a1[idx[:, 0]] * a2[idx[:, 1]] * a3[idx[:, 2]]
        return math.fsum(terms.tolist())

    parts = (
        region_sum(regions["s2_1"]),
        region_sum(regions["s2_2"]),
        region_sum(regions["s2_3"]),
    )
    return PartitionSums(
        s1=region_sum(regions["s1"]),
        s2=parts[0] + parts[1] + parts[2],
        s3=region_sum(regions["s3"]),
        s4=region_sum(regions["s4"]),
        s5=region_sum(regions["s5"]),
        s6=region_sum(regions["s6"]),
        s2_parts=parts,
    )


def delta_vector(o: NodeOffset) -> DeltaVector:
    """S_k(r1, r2, r3, alpha) - S_k(r1 - 1, r2, r3 + 1, alpha), componentwise."""
    if o.r[0] < 1:
        raise DomainError("delta_vector needs r_1 >= 1")
    p = partition_sums(o)
    q = partition_sums(o.shifted())
    return DeltaVector(
        tuple(pv - qv for pv, qv in zip(p.as_tuple(), q.as_tuple()))
    )


# ---------------------------------------------------------------------------
# Reduction inequalities


def _holds_tol(lhs: float, rhs: float) -> float:
    # both sides reach 2^n magnitude, so combine absolute and relative slack
    return 1e-9 + 1e-12 * max(abs(lhs), abs(rhs))


def _leb_at(r: tuple[int, int, int], alpha: tuple[float, float, float], n: int) -> float:
    o = NodeOffset(r, alpha, n)
    return lebesgue_function(o.barycentric(), n)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisError(msg)


def _common_alpha_hypotheses(o: NodeOffset) -> None:
    a1, a2, a3 = o.alpha
    _require(-1.0 < a1 < 1.0, f"alpha_1 = {a1} not strictly inside (-1, 1)")
    _require(0.0 <= a2 < 1.0 and 0.0 <= a3 < 1.0, f"alpha_2/3 = {a2}, {a3} not in [0, 1)")


def _case_slack(r2: int, r3: int, n: int) -> float:
    return 2.0 ** r3 if r2 >= 1 else 2.0 ** (r3 + 1) * math.log(n)


def check_reduction_step(o: NodeOffset) -> ReductionCheck:
    """One step of the cell reduction: move a unit from r_1 to r_3.

    Requires r_1 - 1 + alpha_1 >= r_2 + alpha_2 and
    r_1 - 1 + alpha_1 >= r_3 + 1 + alpha_3 (hence r_1 >= r_3 + 2); checks

      L(r1-1, r2, r3+1, alpha) <= L(r1, r2, r3, alpha)
          + 2^(r2+r3+2) + 2^r2 / r1 - 1 + (2^r3 | 2^(r3+1) ln n).
    """
    r1, r2, r3 = o.r
    a1, a2, a3 = o.alpha
    _common_alpha_hypotheses(o)
    _require(r1 >= 1, "shift needs r_1 >= 1")
    _require(r1 - 1 + a1 >= r2 + a2, "needs r_1 - 1 + alpha_1 >= r_2 + alpha_2")
    _require(r1 - 1 + a1 >= r3 + 1 + a3, "needs r_1 - 1 + alpha_1 >= r_3 + 1 + alpha_3")
    lhs = _leb_at((r1 - 1, r2, r3 + 1), o.alpha, o.n)
    rhs = (
        _leb_at(o.r, o.alpha, o.n)
        + 2.0 ** (r2 + r3 + 2)
        + 2.0 ** r2 / r1
        - 1.0
        + _case_slack(r2, r3, o.n)
    )
    return ReductionCheck(lhs, rhs, lhs <= rhs + _holds_tol(lhs, rhs))


def check_lemma15(o: NodeOffset) -> ReductionCheck:
    """Aggregate reduction of the whole r_3 budget into r_1:

    L(r1, r2, r3, alpha) <= L(r1+r3, r2, 0, alpha)
        + 2^(r2+r3+2) + 2^r2 - r3 + (2^r3 | 2^(r3+1) ln n).
    """
    r1, r2, r3 = o.r
    a1, a2, a3 = o.alpha
    _common_alpha_hypotheses(o)
    _require(r1 + a1 >= r2 + a2, "needs r_1 + alpha_1 >= r_2 + alpha_2")
    _require(r1 + a1 >= r3 + a3, "needs r_1 + alpha_1 >= r_3 + alpha_3")
    lhs = _leb_at(o.r, o.alpha, o.n)
    rhs = (
        _leb_at((r1 + r3, r2, 0), o.alpha, o.n)
        + 2.0 ** (r2 + r3 + 2)
        + 2.0 ** r2
        - r3
        + _case_slack(r2, r3, o.n)
    )
    return ReductionCheck(lhs, rhs, lhs <= rhs + _holds_tol(lhs, rhs))


def check_lemma16(o: NodeOffset) -> ReductionCheck:
    """Reduction of the r_2 budget once r_3 = 0:

    L(r1, r2, 0, alpha) <= L(r1+r2, 0, 0, alpha)
        + 2^(r2+2) + 1 - r2 + 2^(r2+1) ln n.
    """
    r1, r2, r3 = o.r
    a1, a2, _ = o.alpha
    _common_alpha_hypotheses(o)
    _require(r3 == 0, "needs r_3 = 0")
    _require(r1 + a1 >= r2 + a2, "needs r_1 + alpha_1 >= r_2 + alpha_2")
    lhs = _leb_at(o.r, o.alpha, o.n)
    rhs = (
        _leb_at((r1 + r2, 0, 0), o.alpha, o.n)
        + 2.0 ** (r2 + 2)
        + 1.0
        - r2
        + 2.0 ** (r2 + 1) * math.log(o.n)
    )
    return ReductionCheck(lhs, rhs, lhs <= rhs + _holds_tol(lhs, rhs))


def check_theorem1(o: NodeOffset) -> ReductionCheck:
    """Full localization to the corner cell:

    L(r1, r2, r3, alpha) <= L(n-1, 0, 0, alpha) + 2^(2n/3) (10 + 2 ln n).
    """
    r1, r2, r3 = o.r
    a1, a2, a3 = o.alpha
    _common_alpha_hypotheses(o)
    _require(r1 + a1 >= r2 + a2, "needs r_1 + alpha_1 >= r_2 + alpha_2")
    _require(r1 + a1 >= r3 + a3, "needs r_1 + alpha_1 >= r_3 + alpha_3")
    lhs = _leb_at(o.r, o.alpha, o.n)
    rhs = _leb_at((o.n - 1, 0, 0), o.alpha, o.n) + 2.0 ** (2.0 * o.n / 3.0) * (
        10.0 + 2.0 * math.log(o.n)
    )
    return ReductionCheck(lhs, rhs, lhs <= rhs + _holds_tol(lhs, rhs))
