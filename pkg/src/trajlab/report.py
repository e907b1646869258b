"""Figure rendering for stats and chaining output.

Kept separate from `analytics` (which is data-only): the report path
writes matplotlib figures next to the delimited tables so one command
yields both machine- and human-readable artifacts.
"""
from __future__ import annotations

import os
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analytics import ChainPlan, StatsTable  # noqa: E402


def render_mode_distribution(table: StatsTable, path) -> None:
    """Grouped horizontal bars: one bar per mode column per row."""
    data = table.to_dict()
    columns = data["mode_columns"]
    rows = data["rows"]
    fig, ax = plt.subplots(
        figsize=(max(6.0, 0.5 * len(columns) + 2), max(3.0, 0.6 * len(rows) + 2)))
    width = 0.8 / max(len(rows), 1)
    xs = range(len(columns))
    for i, row in enumerate(rows):
        label = ", ".join(str(v) for v in row["key"].values()) or "all"
        vals = [row["modes"].get(c, 0.0) for c in columns]
        ax.bar([x + i * width for x in xs], vals, width=width, label=label)
    ax.set_xticks([x + 0.4 for x in xs])
    ax.set_xticklabels(columns, rotation=45, ha="right", fontsize=7)
    ax.set_ylabel("% of episodes")
    ax.set_title("Mode distribution")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_progressive(progressive, plan: ChainPlan, path,
                       bound: Optional[list] = None) -> None:
    """Progressive completion curve, optionally with the independence bound."""
    fig, ax = plt.subplots(figsize=(max(6.0, 0.45 * len(plan) + 2), 4.0))
    xs = list(range(1, len(plan) + 1))
    ax.plot(xs, progressive, marker="o", label="progressive completion")
    if bound is not None:
        ax.plot(xs, bound, marker="s", linestyle="--",
                label="independence upper bound")
    ax.set_xticks(xs)
    ax.set_xticklabels([s.name for s in plan.slots], rotation=45,
                       ha="right", fontsize=7)
    ax.set_ylabel("% of episodes")
    ax.set_ylim(0, 105)
    ax.set_title(f"Chained completion: {plan.name}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_stats_report(table: StatsTable, out_dir) -> dict:
    """CSV table + mode-distribution figure; returns written paths."""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "stats.csv")
    png_path = os.path.join(out_dir, "mode_distribution.png")
    with open(csv_path, "w", encoding="utf-8") as f:
        f.write(table.to_csv() + "\n")
    render_mode_distribution(table, png_path)
    return {"csv": csv_path, "figure": png_path}


def write_chain_report(progressive, plan: ChainPlan, out_dir,
                       bound: Optional[list] = None) -> dict:
    """CSV curve + progressive-completion figure; returns written paths."""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "progressive.csv")
    png_path = os.path.join(out_dir, "progressive_completion.png")
    with open(csv_path, "w", encoding="utf-8") as f:
        header = "slot,name,progressive"
        if bound is not None:
            header += ",upper_bound"
        f.write(header + "\n")
        for i, slot in enumerate(plan.slots):
            line = f"{i + 1},{slot.name},{progressive[i]:.4f}"
            if bound is not None:
                line += f",{bound[i]:.4f}"
            f.write(line + "\n")
    render_progressive(progressive, plan, png_path, bound=bound)
    return {"csv": csv_path, "figure": png_path}
