"""Figure rendering for sweep and Monte Carlo outputs.

Figures are written straight to files (PNG by default) next to the
delimited output; nothing interactive is opened.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import HistogramResult


def save_histogram(delta: HistogramResult, pi: HistogramResult, path, title: str = "") -> None:
    """Superposed delta4/pi4 histograms over shared bin edges."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for result, label, color in ((delta, r"$\delta^{(4)}$", "tab:blue"), (pi, r"$\pi^{(4)}$", "tab:orange")):
        ax.stairs(result.counts, result.edges, fill=True, alpha=0.45, color=color, label=label)
    ax.set_xlabel("score")
    ax.set_ylabel("count")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    ax.grid(alpha=0.3, linewidth=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_sweep(xname: str, xs, delta4, pi4, path, title: str = "") -> None:
    """delta4 and pi4 against one swept parameter; gaps where not applicable."""
    xs = np.asarray(xs, dtype=float)
    d = np.array([np.nan if v is None else v for v in delta4], dtype=float)
    p = np.array([np.nan if v is None else v for v in pi4], dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, d, label=r"$\delta^{(4)}$", color="tab:blue")
    ax.plot(xs, p, label=r"$\pi^{(4)}$", color="tab:orange", linestyle="--")
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel(xname)
    ax.set_ylabel("score")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    ax.grid(alpha=0.3, linewidth=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
