"""Command-line surface: point evaluation, constant estimation, bound tables,
verification suites, and the figure-producing report.

Exit codes: 0 success, 1 failed verification case, 2 malformed input,
3 barycentric-invariant violation, 4 budget/size exceedance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from .bounds import BoundReport, bos_bound, theorem2_bound, turetskii_asymptote
from .decomposition import offsets_of, partition_sums
from .errors import BudgetExceededError, DomainError, PartitionError, ResourceLimitError
from .maximize import MaxConfig, MaximizationResult, default_config, maximize_lebesgue
from .simplex import as_barycentric, lebesgue_function, enumerate_multi_indices, fundamental_poly
from .verification import run_suites

CSV_HEADER = (
    "n,d,lambda_est,argmax,theorem2_bound,mu_cap,bos_bound,turetskii,"
    "ratio_theorem2,ratio_bos"
)

EXIT_VERIFY_FAILED = 1
EXIT_MALFORMED = 2
EXIT_INVARIANT = 3
EXIT_BUDGET = 4


@dataclass(frozen=True)
class RunSpec:
    """Normalized invocation record; identical specs give identical output."""

    command: str
    n_values: tuple[int, ...]
    d: int
    point: tuple[float, ...] | None = None
    fmt: str = "table"
    seed: int = 42
    tolerance: float | None = None
    out: str | None = None
    budget: int | None = None
    cfg: MaxConfig | None = None

    @staticmethod
    def from_args(args, n_values: tuple[int, ...], cfg: MaxConfig | None = None) -> "RunSpec":
        return RunSpec(
            command=args.command,
            n_values=n_values,
            d=getattr(args, "d", 2),
            point=getattr(args, "parsed_point", None),
            fmt=args.format,
            seed=args.seed,
            tolerance=args.tol,
            out=args.out,
            budget=getattr(args, "budget", None),
            cfg=cfg,
        )


def _workers_from_env() -> int:
    raw = os.environ.get("LEBX_THREADS", "")
    if not raw:
        return 1
    try:
        v = int(raw)
    except ValueError:
        return 1
    if v == 0:
        return os.cpu_count() or 1
    return max(1, v)


def _parse_n_range(args) -> tuple[int, ...]:
    if getattr(args, "n_range", None):
        try:
            a, b = args.n_range.split(":")
            lo, hi = int(a), int(b)
        except ValueError:
            print(f"malformed --n-range {args.n_range!r}, expected a:b", file=sys.stderr)
            sys.exit(EXIT_MALFORMED)
        if not (1 <= lo <= hi):
            print(f"--n-range needs 1 <= a <= b, got {args.n_range}", file=sys.stderr)
            sys.exit(EXIT_MALFORMED)
        return tuple(range(lo, hi + 1))
    if getattr(args, "n", None) is None:
        print("one of --n or --n-range is required", file=sys.stderr)
        sys.exit(EXIT_MALFORMED)
    return (args.n,)


def _parse_point(raw: str) -> tuple[float, ...]:
    try:
        coords = tuple(float(tok) for tok in raw.split(","))
    except ValueError:
        print(f"malformed --point {raw!r}", file=sys.stderr)
        sys.exit(EXIT_MALFORMED)
    if len(coords) < 2:
        print("--point needs at least 2 comma-separated coordinates", file=sys.stderr)
        sys.exit(EXIT_MALFORMED)
    return coords


def _fmt_float(v: float) -> str:
    return f"{v:.17g}"


def _fmt_argmax(coords) -> str:
    return ",".join(_fmt_float(c) for c in coords)


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".lebx-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        _atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# bounds rows


def _bound_row(
    n: int,
    d: int,
    result: MaximizationResult | None,
) -> BoundReport:
    t2 = theorem2_bound(n) if n >= 4 else None
    tk = turetskii_asymptote(n) if n >= 2 else None
    bb = bos_bound(n)
    lam = result.lambda_est if result else None
    ratios = {}
    if lam is not None:
        if t2 is not None:
            ratios["theorem2"] = lam / t2.bound
        ratios["bos"] = lam / bb
    return BoundReport(
        n=n,
        d=d,
        lambda_est=lam,
        theorem2=t2.bound if t2 else None,
        mu_cap=t2.mu_cap if t2 else None,
        bos=bb,
        turetskii=tk,
        ratios=ratios,
    )


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return '"' + v.replace('"', '""') + '"' if "," in v or '"' in v else v
    if isinstance(v, int):
        return str(v)
    return _fmt_float(v)


def _bounds_csv(rows: list[tuple[BoundReport, MaximizationResult | None]]) -> str:
    lines = [CSV_HEADER]
    for rep, res in rows:
        lines.append(
            ",".join(
                _csv_cell(v)
                for v in (
                    rep.n,
                    rep.d,
                    rep.lambda_est,
                    _fmt_argmax(res.argmax) if res else None,
                    rep.theorem2,
                    rep.mu_cap,
                    rep.bos,
                    rep.turetskii,
                    rep.ratios.get("theorem2"),
                    rep.ratios.get("bos"),
                )
            )
        )
    return "\n".join(lines) + "\n"


def _bounds_json(rows: list[tuple[BoundReport, MaximizationResult | None]]) -> str:
    payload = []
    for rep, res in rows:
        entry = {
            "n": rep.n,
            "d": rep.d,
            "lambda_est": rep.lambda_est,
            "argmax": list(res.argmax) if res else None,
            "theorem2_bound": rep.theorem2,
            "mu_cap": rep.mu_cap,
            "bos_bound": rep.bos,
            "turetskii": rep.turetskii,
            "ratio_theorem2": rep.ratios.get("theorem2"),
            "ratio_bos": rep.ratios.get("bos"),
        }
        if res is not None:
            entry["maximization"] = {
                "evaluations": res.evaluations,
                "converged_step": res.converged_step,
            }
        payload.append(entry)
    return _json_dumps(payload)


def _bounds_table(rows: list[tuple[BoundReport, MaximizationResult | None]]) -> str:
    cols = ["n", "d", "lambda_est", "theorem2", "mu_cap", "bos", "turetskii", "ratio_t2"]
    fmt = "{:>4} {:>2} {:>14} {:>14} {:>12} {:>14} {:>14} {:>10}\n"
    out = [fmt.format(*cols)]
    for rep, _ in rows:
        out.append(
            fmt.format(
                rep.n,
                rep.d,
                "-" if rep.lambda_est is None else f"{rep.lambda_est:.6g}",
                "-" if rep.theorem2 is None else f"{rep.theorem2:.6g}",
                "-" if rep.mu_cap is None else f"{rep.mu_cap:.4g}",
                f"{rep.bos:.6g}",
                "-" if rep.turetskii is None else f"{rep.turetskii:.6g}",
                "-" if "theorem2" not in rep.ratios else f"{rep.ratios['theorem2']:.4g}",
            )
        )
    return "".join(out)


def compute_bound_rows(
    n_values,
    d: int,
    skip_lambda: bool = False,
    cfg: MaxConfig | None = None,
    budget: int | None = None,
    workers: int = 1,
) -> list[tuple[BoundReport, MaximizationResult | None]]:
    rows = []
    for n in n_values:
        res = None
        if not skip_lambda:
            res = maximize_lebesgue(
                n, d, cfg=cfg or default_config(n), budget=budget, workers=workers
            )
        rows.append((_bound_row(n, d, res), res))
    return rows


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args) -> int:
    point = _parse_point(args.point)
    args.parsed_point = point
    spec = RunSpec.from_args(args, (args.n,))
    d = spec.d if spec.d is not None else len(point) - 1
    if d != len(point) - 1:
        print(
            f"--d {d} disagrees with a {len(point)}-coordinate point", file=sys.stderr
        )
        return EXIT_MALFORMED
    try:
        lam = as_barycentric(point)
    except DomainError as exc:
        print(f"invalid barycentric point: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    n = spec.n_values[0]
    value = lebesgue_function(lam, n)
    payload: dict = {
        "n": n,
        "d": d,
        "lambda": [float(v) for v in lam],
        "L_value": value,
    }
    if args.breakdown:
        ns = enumerate_multi_indices(n, d)
        payload["terms"] = [
            {"index": list(idx), "l_i": fundamental_poly(idx, lam)} for idx in ns
        ]
    if d == 2:
        canon = tuple(sorted(lam, reverse=True))
        o = offsets_of(canon, n)
        try:
            ps = partition_sums(o)
            payload["partition_sums"] = {
                "point": list(canon),
                "r": list(o.r),
                "alpha": list(o.alpha),
                "s1": ps.s1,
                "s2": ps.s2,
                "s2_parts": list(ps.s2_parts),
                "s3": ps.s3,
                "s4": ps.s4,
                "s5": ps.s5,
                "s6": ps.s6,
                "total": ps.total(),
            }
        except PartitionError as exc:  # pragma: no cover - canonical points tile
            payload["partition_sums"] = {"error": str(exc)}
    if spec.fmt == "json":
        _emit(_json_dumps(payload), spec.out)
    elif spec.fmt == "csv":
        text = "n,d,point,L_value\n" + ",".join(
            (
                str(n),
                str(d),
                _csv_cell(_fmt_argmax(lam)),
                _fmt_float(value),
            )
        ) + "\n"
        _emit(text, spec.out)
    else:
        lines = [f"L_{n}^{d}({_fmt_argmax(lam)}) = {value:.12g}\n"]
        if "partition_sums" in payload and "s1" in payload["partition_sums"]:
            ps = payload["partition_sums"]
            lines.append(
                "partition sums: "
                + ", ".join(f"S{k} = {ps[f's{k}']:.12g}" for k in range(1, 7))
                + f"; total = {ps['total']:.12g}\n"
            )
        if args.breakdown:
            for item in payload["terms"]:
                lines.append(f"  l_{tuple(item['index'])} = {item['l_i']:.12g}\n")
        _emit("".join(lines), spec.out)
    return 0


def cmd_max(args) -> int:
    spec = RunSpec.from_args(args, _parse_n_range(args))
    workers = _workers_from_env()
    results = []
    for n in spec.n_values:
        cfg = _cfg_from_args(args, n)
        results.append(
            (
                n,
                maximize_lebesgue(
                    n, spec.d, cfg=cfg, budget=spec.budget, workers=workers
                ),
            )
        )
    if spec.fmt == "json":
        payload = [
            {
                "n": n,
                "d": args.d,
                "lambda_est": r.lambda_est,
                "argmax": list(r.argmax),
                "evaluations": r.evaluations,
                "converged_step": r.converged_step,
            }
            for n, r in results
        ]
        _emit(_json_dumps(payload), spec.out)
    elif spec.fmt == "csv":
        lines = ["n,d,lambda_est,argmax,evaluations,converged_step"]
        for n, r in results:
            lines.append(
                ",".join(
                    (
                        str(n),
                        str(args.d),
                        _fmt_float(r.lambda_est),
                        _csv_cell(_fmt_argmax(r.argmax)),
                        str(r.evaluations),
                        _fmt_float(r.converged_step),
                    )
                )
            )
        _emit("\n".join(lines) + "\n", spec.out)
    else:
        lines = []
        for n, r in results:
            lines.append(
                f"n={n} d={spec.d}: Lambda >= {r.lambda_est:.12g} at "
                f"({_fmt_argmax(r.argmax)}) [{r.evaluations} evals, "
                f"step {r.converged_step:.3g}]\n"
            )
        _emit("".join(lines), spec.out)
    return 0


def _cfg_from_args(args, n: int) -> MaxConfig:
    base = default_config(n, mode=args.mode)
    step = args.grid_step if args.grid_step else base.grid_step
    rounds = args.refine if args.refine is not None else base.refine_rounds
    top = args.top_cells if args.top_cells is not None else base.top_cells
    return MaxConfig(grid_step=step, refine_rounds=rounds, top_cells=top, mode=args.mode)


def cmd_bounds(args) -> int:
    n_values = _parse_n_range(args)
    cfg = None
    if args.grid_step or args.refine is not None or args.top_cells is not None:
        cfg = _cfg_from_args(args, n_values[0])
    spec = RunSpec.from_args(args, n_values, cfg)
    workers = _workers_from_env()
    rows = compute_bound_rows(
        spec.n_values,
        spec.d,
        skip_lambda=args.skip_lambda,
        cfg=spec.cfg,
        budget=spec.budget,
        workers=workers,
    )
    if spec.fmt == "json":
        _emit(_bounds_json(rows), spec.out)
    elif spec.fmt == "csv":
        _emit(_bounds_csv(rows), spec.out)
    else:
        _emit(_bounds_table(rows), spec.out)
    return 0


def cmd_verify(args) -> int:
    n_values = _parse_n_values_optional(args)
    spec = RunSpec.from_args(args, n_values or ())
    reports = run_suites(
        args.suite,
        trials=args.trials,
        seed=spec.seed,
        tol=spec.tolerance,
        n_values=n_values,
    )
    lines = []
    all_ok = True
    for rep in reports:
        status = "pass" if rep.ok else "FAIL"
        all_ok = all_ok and rep.ok
        lines.append(
            f"{status} {rep.suite}: {rep.cases} cases, {rep.failures} failures, "
            f"worst {rep.worst:.3e}\n"
        )
        for item in rep.failed:
            lines.append(f"    offending: {item}\n")
    if spec.fmt == "json":
        payload = [
            {
                "suite": r.suite,
                "cases": r.cases,
                "failures": r.failures,
                "worst": r.worst,
                "offending": r.failed,
            }
            for r in reports
        ]
        _emit(_json_dumps(payload), spec.out)
    elif spec.fmt == "csv":
        text = "suite,cases,failures,worst\n" + "".join(
            f"{r.suite},{r.cases},{r.failures},{_fmt_float(r.worst)}\n" for r in reports
        )
        _emit(text, spec.out)
    else:
        _emit("".join(lines), spec.out)
    return 0 if all_ok else EXIT_VERIFY_FAILED


def _parse_n_values_optional(args):
    if getattr(args, "n_range", None):
        return _parse_n_range(args)
    if getattr(args, "n", None) is not None:
        return (args.n,)
    return None


def cmd_report(args) -> int:
    from .report import render_bound_figures

    spec = RunSpec.from_args(args, _parse_n_range(args))
    workers = _workers_from_env()
    rows = compute_bound_rows(
        spec.n_values, spec.d, skip_lambda=False, budget=spec.budget, workers=workers
    )
    out = spec.out or "reports/bounds.csv"
    _emit(_bounds_csv(rows), out)
    stem, _ = os.path.splitext(out)
    figures = render_bound_figures(
        [rep for rep, _ in rows],
        values_path=f"{stem}_values.png",
        ratios_path=f"{stem}_ratios.png",
    )
    sys.stdout.write(f"wrote {out}\n")
    for f in figures:
        sys.stdout.write(f"wrote {f}\n")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lebx",
        description=(
            "Lebesgue functions and constants for Lagrange interpolation at "
            "equally spaced simplex nodes"
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, d_default=2):
        p.add_argument("--n", type=int, help="single degree")
        p.add_argument("--n-range", type=str, help="inclusive degree range a:b")
        p.add_argument("--d", type=int, default=d_default, help="simplex dimension")
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--out", type=str, help="output path (atomic write)")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--tol", type=float, default=None)

    def max_opts(p):
        p.add_argument("--grid-step", type=float, default=None)
        p.add_argument("--refine", type=int, default=None, help="refinement rounds")
        p.add_argument("--top-cells", type=int, default=None)
        p.add_argument(
            "--mode",
            choices=("full-domain", "vertex-region", "edge-only"),
            default="full-domain",
        )
        p.add_argument("--budget", type=int, default=None, help="max evaluations")

    pe = sub.add_parser("eval", help="evaluate the Lebesgue function at a point")
    common(pe, d_default=None)  # inferred from the point when omitted
    pe.add_argument("--point", required=True, help="comma-separated barycentric coords")
    pe.add_argument("--breakdown", action="store_true", help="per-index terms")
    pe.set_defaults(func=cmd_eval)

    pm = sub.add_parser("max", help="estimate the Lebesgue constant")
    common(pm)
    max_opts(pm)
    pm.set_defaults(func=cmd_max)

    pb = sub.add_parser("bounds", help="bound table (CSV/JSON) across degrees")
    common(pb)
    max_opts(pb)
    pb.add_argument(
        "--skip-lambda",
        action="store_true",
        help="emit only the closed-form bound columns",
    )
    pb.set_defaults(func=cmd_bounds)

    pv = sub.add_parser("verify", help="run a verification suite")
    common(pv)
    pv.add_argument(
        "--suite",
        choices=("identities", "inequalities", "partition", "reduction", "all"),
        required=True,
    )
    pv.add_argument("--trials", type=int, default=1000)
    pv.set_defaults(func=cmd_verify)

    pr = sub.add_parser(
        "report", help="bound table plus rendered figures next to the CSV"
    )
    common(pr)
    max_opts(pr)
    pr.set_defaults(func=cmd_report)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "eval" and args.n is None:
        print("eval requires --n", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
