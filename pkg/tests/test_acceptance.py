"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; the whole module is designed to finish in a few minutes.
"""

import math
import time
from functools import lru_cache

import numpy as np

from lebx.bounds import bos_bound, mu_cap, theorem2_bound
from lebx.maximize import maximize_lebesgue, maximize_on_edge
from lebx.simplex import basis_sum, enumerate_multi_indices, fundamental_poly, node_of
from lebx.verification import (
    run_identity_suite,
    run_inequality_suite,
    run_partition_suite,
    run_rational_identity_suite,
    run_reduction_suite,
)

from oracles import bruteforce_lambda_1d


def _report(name: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}: {name}"
    if detail:
        line += f" [{detail}]"
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def lambda2(n: int):
    return maximize_lebesgue(n, 2)


@lru_cache(maxsize=None)
def lambda1(n: int):
    return maximize_on_edge(n)


@lru_cache(maxsize=None)
def oracle1(n: int) -> float:
    return bruteforce_lambda_1d(n, step=1e-6)


def test_partition_of_unity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(1000):
        d = int(rng.integers(1, 4))
        n = int(rng.integers(1, 31))
        lam = rng.dirichlet(np.ones(d + 1))
        worst = max(worst, abs(basis_sum(lam, n, d) - 1.0))
    elapsed = time.perf_counter() - t0
    _report(
        "partition of unity (1000 points, d in 1..3, n in 1..30)",
        worst <= 1e-9 and elapsed < 30.0,
        f"worst defect {worst:.2e}, {elapsed:.1f}s",
    )


def test_kronecker_property():
    worst = 0.0
    pairs = 0
    for d in (1, 2):
        for n in range(1, 9):
            ns = enumerate_multi_indices(n, d)
            for i in ns:
                for j in ns:
                    val = fundamental_poly(i, node_of(j))
                    expect = 1.0 if i == j else 0.0
                    worst = max(worst, abs(val - expect))
                    pairs += 1
    _report(
        "Kronecker property (exhaustive, n <= 8, d <= 2)",
        worst <= 1e-10,
        f"{pairs} pairs, worst {worst:.2e}",
    )


def test_1d_oracle_values():
    ok = abs(lambda1(1).lambda_est - 1.0) <= 1e-6
    ok = ok and abs(lambda1(2).lambda_est - 1.25) <= 1e-6
    worst = 0.0
    for n in range(4, 21):
        est = lambda1(n).lambda_est
        ref = oracle1(n)
        rel = abs(est - ref) / ref
        worst = max(worst, rel)
    _report(
        "1-D constants vs dense-grid brute force (n = 1, 2, 4..20)",
        ok and worst <= 1e-5,
        f"worst rel dev {worst:.2e}",
    )


def test_partition_identity():
    t0 = time.perf_counter()
    rep = run_partition_suite(trials=500, seed=42, tol=1e-9)
    elapsed = time.perf_counter() - t0
    _report(
        "six-sum decomposition equals the Lebesgue function (500 draws, n in 5..15)",
        rep.ok and rep.worst <= 1e-9 and elapsed < 60.0,
        f"worst rel {rep.worst:.2e}, {elapsed:.1f}s",
    )


def test_theorem2_bound_holds():
    t0 = time.perf_counter()
    violations = [
        n for n in range(4, 21) if lambda2(n).lambda_est > theorem2_bound(n).bound
    ]
    elapsed = time.perf_counter() - t0
    _report(
        "triangle upper bound dominates estimates (d = 2, n = 4..20)",
        not violations and elapsed < 600.0,
        f"violations {violations}, {elapsed:.1f}s",
    )


def test_bos_bound_holds():
    bad = []
    for n in range(1, 13):
        if lambda1(n).lambda_est > bos_bound(n):
            bad.append((1, n))
        if lambda2(n).lambda_est > bos_bound(n):
            bad.append((2, n))
    _report("binomial bound holds (d in {1,2}, n <= 12)", not bad, f"violations {bad}")


def test_edge_monotonicity():
    bad = [
        n
        for n in range(1, 21)
        if lambda2(n).lambda_est < lambda1(n).lambda_est - 1e-9
    ]
    _report(
        "triangle constant dominates edge constant (n <= 20)",
        not bad,
        f"violations {bad}",
    )


def test_turetskii_window():
    ratios = {}
    for n in range(10, 31):
        ratios[n] = oracle1(n) * math.e * n * math.log(n) / 2.0 ** (n + 1)
    bad = {n: r for n, r in ratios.items() if not (0.6 <= r <= 1.2)}
    _report(
        "1-D constants sit in the leading-order window (n = 10..30)",
        not bad,
        f"ratio range [{min(ratios.values()):.3f}, {max(ratios.values()):.3f}]",
    )


def test_identity_suites():
    reports = run_identity_suite(trials=1000, seed=42, tol=1e-10)
    worst = max(r.worst for r in reports)
    ok = all(r.ok for r in reports) and worst <= 1e-10
    rational = run_rational_identity_suite()
    _report(
        "identity suites (1000 seeded draws each + exact-rational sub-suite)",
        ok and rational.ok and rational.worst == 0.0,
        f"worst rel {worst:.2e}, rational {rational.cases} exact",
    )


def test_inequality_suites():
    reports = run_inequality_suite(seed=42, trials=1000)
    failures = {r.suite: r.failures for r in reports if r.failures}
    _report(
        "inequality suites (grids, sweeps to 60, sharpness, constant bracket)",
        not failures,
        f"failures {failures}" if failures else "zero violations",
    )


def test_reduction_suite():
    t0 = time.perf_counter()
    reports = run_reduction_suite(trials=500, seed=42, n_values=tuple(range(6, 15)))
    elapsed = time.perf_counter() - t0
    failures = {r.suite: r.failures for r in reports if r.failures}
    _report(
        "reduction inequalities (500 admissible draws per n in 6..14)",
        not failures,
        f"{sum(r.cases for r in reports)} checks, {elapsed:.1f}s",
    )


def test_mu_cap_vanishes():
    vals = [mu_cap(n) for n in range(40, 201)]
    decreasing = all(b < a for a, b in zip(vals, vals[1:]))
    _report(
        "correction cap vanishes (mu(100) < 1e-4, decreasing on 40..200)",
        mu_cap(100) < 1e-4 and decreasing,
        f"mu(100) = {mu_cap(100):.2e}",
    )
