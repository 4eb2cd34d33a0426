"""Figures written next to the delimited range/classify output."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .rn_solver import A_S_THRESHOLD  # noqa: E402

VERDICT_COLORS = {
    "NO_CANDIDATES_UP_TO_BOUND": "tab:blue",
    "ALL_CANDIDATES_ELIMINATED_BY_LLOYD": "tab:orange",
    "UNCONDITIONAL_NONEXISTENCE": "tab:green",
    "SURVIVING_CANDIDATE": "tab:red",
}


def _finish(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_range(result, out_dir) -> Path:
    """Solutions found and largest a_S per q, coloured by verdict."""
    reports = [r for r in result.reports if not r.skipped]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(9, 6), sharex=True)
    for verdict, color in VERDICT_COLORS.items():
        sel = [r for r in reports if r.verdict.value == verdict]
        if not sel:
            continue
        qs = [r.q for r in sel]
        top.scatter(qs, [len(r.solutions) for r in sel], s=14, c=color, label=verdict.lower())
        a_s = [max((c["a_S"] or 0) for c in r.curves) for r in sel]
        bottom.scatter(qs, [math.log10(a) if a else float("nan") for a in a_s], s=14, c=color)
    top.set_ylabel("RN solutions (bounded)")
    top.legend(fontsize=7, frameon=False)
    bottom.axhline(math.log10(A_S_THRESHOLD), ls="--", lw=0.8, c="k")
    bottom.set_ylabel("log10 max a_S")
    bottom.set_xlabel("q")
    return _finish(fig, Path(out_dir) / "range_summary.png")


def plot_curves(report, out_dir) -> Path:
    """log10 a_S for each curve index d of one q."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ds = [str(c["d"]) for c in report.curves]
    vals = [math.log10(c["a_S"]) if c["a_S"] else 0.0 for c in report.curves]
    ax.bar(ds, vals, color="tab:gray")
    ax.axhline(math.log10(A_S_THRESHOLD), ls="--", lw=0.8, c="k")
    ax.set_xlabel("d")
    ax.set_ylabel("log10 a_S")
    ax.set_title(f"q = {report.q}")
    ax.tick_params(axis="x", labelrotation=45, labelsize=7)
    return _finish(fig, Path(out_dir) / f"curves_q{report.q}.png")
