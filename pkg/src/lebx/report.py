"""Figure rendering for the bound-table report path.

Figures are written next to the delimited output so a report run leaves a
self-contained directory: the CSV for machine consumers, the PNGs for eyes.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bounds import BoundReport


def render_bound_figures(
    rows: list[BoundReport],
    values_path: str,
    ratios_path: str,
) -> list[str]:
    """Render the bound comparison and ratio figures; returns written paths."""
    written: list[str] = []
    ns = [r.n for r in rows]

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    series = [
        ("lambda_est", [r.lambda_est for r in rows], "estimated constant", "o-"),
        ("theorem2", [r.theorem2 for r in rows], "triangle upper bound", "s--"),
        ("bos", [r.bos for r in rows], "binomial bound", "^--"),
        ("turetskii", [r.turetskii for r in rows], "1-D leading order", "v:"),
    ]
    for _, vals, label, style in series:
        pts = [(n, v) for n, v in zip(ns, vals) if v is not None]
        if pts:
            ax.semilogy([p[0] for p in pts], [p[1] for p in pts], style, label=label)
    ax.set_xlabel("degree n")
    ax.set_ylabel("value")
    ax.set_title("Lebesgue constant estimate vs. closed-form bounds")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    _save(fig, values_path)
    written.append(values_path)

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    any_ratio = False
    for key, label, style in (
        ("theorem2", "estimate / triangle bound", "o-"),
        ("bos", "estimate / binomial bound", "s--"),
    ):
        pts = [(r.n, r.ratios[key]) for r in rows if key in r.ratios]
        if pts:
            any_ratio = True
            ax.semilogy([p[0] for p in pts], [p[1] for p in pts], style, label=label)
    ax.axhline(1.0, color="k", lw=0.8, alpha=0.6)
    ax.set_xlabel("degree n")
    ax.set_ylabel("ratio")
    ax.set_title("Bound slack (below 1 = bound holds)")
    ax.grid(True, which="both", alpha=0.3)
    if any_ratio:
        ax.legend()
    fig.tight_layout()
    _save(fig, ratios_path)
    written.append(ratios_path)
    return written


def _save(fig, path: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
