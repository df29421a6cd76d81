"""Grid-refinement estimation of the Lebesgue constant over the simplex.

The search walks an exact integer lattice: points are integer tuples k with
sum(k) = D interpreted as k/D, the initial D coming from grid_step and
doubling every refinement round.  Working on the lattice keeps grids nested
across rounds, makes deduplication exact, and gives a total tie-break order
(value first, then lexicographically smallest sorted-descending coordinates)
so results cannot depend on evaluation order or worker count.

Estimates are maxima over evaluated points, hence lower bounds on the true
constant; no enclosure is attempted.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceededError, DomainError
from .simplex import DEFAULT_NODE_CAP, enumerate_multi_indices, lebesgue_function

MODES = ("full-domain", "vertex-region", "edge-only")


@dataclass(frozen=True)
class MaxConfig:
    """Search parameters: initial spacing, rounds, and carried cell count.

    mode restricts the searched region: the whole simplex, the corner cells
    (tail coordinates at most 2/n), or the d=1 face only.  use_symmetry
    folds every point to its sorted-descending representative before
    evaluation; switching it off searches the raw region but reports the
    same canonical argmax.
    """

    grid_step: float
    refine_rounds: int = 30
    top_cells: int = 16
    mode: str = "full-domain"
    use_symmetry: bool = True

    def __post_init__(self) -> None:
        if not (0.0 < self.grid_step <= 0.5):
            raise DomainError(f"grid_step must lie in (0, 0.5], got {self.grid_step}")
        if self.refine_rounds < 0:
            raise DomainError("refine_rounds must be >= 0")
        if self.top_cells < 1:
            raise DomainError("top_cells must be >= 1")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")


def default_config(n: int, mode: str = "full-domain") -> MaxConfig:
    """Default search: 4 samples per node gap, 30 halvings, 16 carried cells."""
    return MaxConfig(grid_step=1.0 / (4 * max(n, 1)), mode=mode)


@dataclass(frozen=True)
class MaximizationResult:
    lambda_est: float
    argmax: tuple[float, ...]
    evaluations: int
    converged_step: float


def _stencil(d: int) -> tuple[tuple[int, ...], ...]:
    moves = []
    for delta in product((-1, 0, 1), repeat=d + 1):
        if any(delta) and sum(delta) == 0:
            moves.append(delta)
    return tuple(moves)


def _canonical(k: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(k, reverse=True))


def _in_region(k: tuple[int, ...], D: int, n: int, mode: str) -> bool:
    if mode == "full-domain":
        return True
    c = _canonical(k)
    if mode == "vertex-region":
        # tail coordinates at most 2/n: k_s / D <= 2 / n, exactly in integers
        return all(v * n <= 2 * D for v in c[1:])
    return all(v == 0 for v in c[2:])  # edge-only


class _Search:
    def __init__(self, n: int, d: int, cfg: MaxConfig, budget, workers: int, cap: int):
        self.n = n
        self.d = d
        self.cfg = cfg
        self.budget = budget
        self.workers = max(1, workers)
        self.cap = cap
        self.evaluations = 0
        self.best_val = -math.inf
        self.best_coords: tuple[float, ...] | None = None

    def _evaluate(self, points: list[tuple[int, ...]], D: int) -> list[float]:
        if self.budget is not None and self.evaluations + len(points) > self.budget:
            raise BudgetExceededError(
                f"evaluation budget {self.budget} exceeded "
                f"(needed {self.evaluations + len(points)})"
            )
        lams = [tuple(v / D for v in k) for k in points]
        if self.workers > 1 and len(points) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as ex:
                vals = list(ex.map(lambda l: lebesgue_function(l, self.n, cap=self.cap), lams))
        else:
            vals = [lebesgue_function(l, self.n, cap=self.cap) for l in lams]
        self.evaluations += len(points)
        for k, v in zip(points, vals):
            fc = tuple(x / D for x in _canonical(k))
            if v > self.best_val or (v == self.best_val and fc < self.best_coords):
                self.best_val = v
                self.best_coords = fc
        return vals

    def run(self) -> MaximizationResult:
        cfg = self.cfg
        D = max(2, round(1.0 / cfg.grid_step))
        grid = enumerate_multi_indices(D, self.d, cap=self.cap)
        pts = [tuple(int(v) for v in row) for row in grid.indices]
        if cfg.use_symmetry:
            pts = sorted({_canonical(k) for k in pts})
        pts = [k for k in pts if _in_region(k, D, self.n, cfg.mode)]
        vals = self._evaluate(pts, D)
        ranked = sorted(zip(vals, pts), key=lambda t: (-t[0], t[1]))
        kept = ranked[: cfg.top_cells]

        moves = _stencil(self.d)
        for _ in range(cfg.refine_rounds):
            D *= 2
            kept = [(v, tuple(2 * x for x in k)) for v, k in kept]
            centers = {k for _, k in kept}
            cand: set[tuple[int, ...]] = set()
            for _, k in kept:
                for delta in moves:
                    q = tuple(a + b for a, b in zip(k, delta))
                    if min(q) < 0:
                        continue
                    if cfg.use_symmetry:
                        q = _canonical(q)
                    if q in centers or not _in_region(q, D, self.n, cfg.mode):
                        continue
                    cand.add(q)
            new_pts = sorted(cand)
            new_vals = self._evaluate(new_pts, D)
            pool = kept + list(zip(new_vals, new_pts))
            pool.sort(key=lambda t: (-t[0], t[1]))
            kept = pool[: cfg.top_cells]

        # canonical argmax, value re-evaluated there (not cached)
        argmax = self.best_coords
        est = lebesgue_function(argmax, self.n, cap=self.cap)
        self.evaluations += 1
        return MaximizationResult(
            lambda_est=est,
            argmax=argmax,
            evaluations=self.evaluations,
            converged_step=1.0 / D,
        )


def maximize_lebesgue(
    n: int,
    d: int,
    cfg: MaxConfig | None = None,
    budget: int | None = None,
    workers: int = 1,
    cap: int = DEFAULT_NODE_CAP,
) -> MaximizationResult:
    """Estimate the degree-n Lebesgue constant on the d-simplex.

    The estimate is the maximum over all evaluated points (a lower bound on
    the true constant) and is deterministic for a fixed configuration.
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if cfg is None:
        cfg = default_config(n)
    if n == 1:
        # the basis is the barycentric coordinates themselves: the function
        # is identically 1, reported at the centroid
        centroid = tuple(1.0 / (d + 1) for _ in range(d + 1))
        val = lebesgue_function(centroid, n, cap=cap)
        return MaximizationResult(val, centroid, 1, cfg.grid_step)
    return _Search(n, d, cfg, budget, workers, cap).run()


def maximize_on_edge(
    n: int,
    cfg: MaxConfig | None = None,
    budget: int | None = None,
    workers: int = 1,
) -> MaximizationResult:
    """Maximize the 1-D Lebesgue function (the simplex edge restriction)."""
    return maximize_lebesgue(n, 1, cfg=cfg, budget=budget, workers=workers)
