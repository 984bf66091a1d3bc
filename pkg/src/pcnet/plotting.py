"""Figure helpers for experiment reports. Figures are written to files, never shown."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

SCORER_COLORS = {"cu": "#1f77b4", "cw": "#d62728", "pr": "#2ca02c"}


def new_figure(width=6.0, height=None, ncols=1):
    golden = (math.sqrt(5) - 1.0) / 2.0
    if height is None:
        height = width * golden
    fig, ax = plt.subplots(1, ncols, figsize=(width, height), squeeze=False)
    return fig, ax[0]


def save(fig, path, dpi=150):
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return str(path)


def grid_boxplot(values_by_scorer: dict, baseline_by_scorer: dict, ylabel: str, path, title: str = ""):
    """Distribution of a metric over grid cells per scorer; horizontal ticks mark the original scores."""
    scorers = [s for s in values_by_scorer if len(values_by_scorer[s])]
    fig, (ax,) = new_figure(1.8 + 1.4 * max(1, len(scorers)))
    if scorers:
        ax.boxplot([values_by_scorer[s] for s in scorers], widths=0.5)
        ax.set_xticks(range(1, len(scorers) + 1))
        ax.set_xticklabels(scorers)
        for i, s in enumerate(scorers, start=1):
            b = baseline_by_scorer.get(s)
            if b is not None:
                ax.hlines(b, i - 0.35, i + 0.35, colors=SCORER_COLORS.get(s, "k"), linestyles="--", lw=1.5)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    return save(fig, path)


def severity_curves(profiles: dict, path, title: str = "", max_step: int | None = None):
    """Mean new infections per step for each labelled profile."""
    fig, (ax,) = new_figure()
    for label, prof in profiles.items():
        y = np.asarray(prof)
        if max_step:
            y = y[:max_step]
        ax.plot(np.arange(1, y.size + 1), y, marker="o", ms=3, label=label)
    ax.set_xlabel("time step")
    ax.set_ylabel("mean new infections")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    return save(fig, path)


def overlap_bars(ps, pc_vals, orig_vals, path, title: str = ""):
    fig, (ax,) = new_figure()
    x = np.arange(len(ps))
    ax.bar(x - 0.2, pc_vals, 0.4, label="P&C")
    ax.bar(x + 0.2, orig_vals, 0.4, label="original")
    ax.set_xticks(x)
    ax.set_xticklabels([f"{100 * p:g}" for p in ps])
    ax.set_xlabel("top p% nodes")
    ax.set_ylabel("fraction of p% best spreaders")
    ax.set_ylim(0, 1)
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    return save(fig, path)


def bias_variance_bars(names, orig, pc, ylabel, path):
    fig, (ax,) = new_figure(max(4.0, 0.5 * len(names) + 2))
    x = np.arange(len(names))
    ax.bar(x - 0.2, orig, 0.4, label="original")
    ax.bar(x + 0.2, pc, 0.4, label="P&C")
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel(ylabel)
    ax.legend(frameon=False)
    return save(fig, path)
