"""Figure rendering for the CLI report paths.

Each function renders one PNG (or whatever the path suffix selects) with the
non-interactive Agg backend and returns the path.  Figures accompany the
delimited output; nothing here is needed for the numerical results.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .core import CylinderInterval
from .covering import ContentScan
from .covering_mc import MeasureExperiment
from .targets import HitRecord

__all__ = [
    "fig_content_scan",
    "fig_cylinders",
    "fig_hits",
    "fig_mc_trend",
]

_FULL = "#2a6f97"
_NONFULL = "#e07a5f"


def fig_cylinders(cyls: Sequence[CylinderInterval], path: str, title: str = "") -> str:
    fig, ax = plt.subplots(figsize=(9, 1.8))
    for c in cyls:
        ax.axvspan(
            float(c.left),
            float(c.right),
            color=_FULL if c.is_full else _NONFULL,
            alpha=0.85,
            lw=0,
        )
    ax.set_xlim(0.0, 1.0)
    ax.set_yticks([])
    ax.set_xlabel("x")
    if title:
        ax.set_title(title)
    fig.text(0.01, 0.02, "full", color=_FULL, fontsize=8)
    fig.text(0.06, 0.02, "not full", color=_NONFULL, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def fig_hits(
    records: Sequence[HitRecord], n_max: int, path: str, title: str = ""
) -> str:
    """Hit distances against the threshold envelope, log-scale y."""
    fig, ax = plt.subplots(figsize=(7, 4))
    if records:
        pairs = len(records[0].distances)
        ns = [r.n for r in records]
        for i in range(pairs):
            ax.scatter(
                ns,
                [max(r.distances[i], 1e-300) for r in records],
                s=14,
                label=f"distance {i + 1}" if pairs > 1 else "distance",
            )
            ax.plot(
                ns,
                [r.thresholds[i] for r in records],
                ls="--",
                lw=0.9,
                label=f"threshold {i + 1}" if pairs > 1 else "threshold",
            )
        ax.set_yscale("log")
        ax.legend(fontsize=8)
    else:
        ax.text(0.5, 0.5, "no hits", ha="center", va="center")
    ax.set_xlim(0, n_max + 1)
    ax.set_xlabel("n")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def fig_content_scan(scan: ContentScan, path: str, title: str = "") -> str:
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 5), sharex=True)
    ns = list(range(scan.n_start, scan.n_max + 1))
    ax1.plot(ns, scan.log_terms, lw=1.0, color=_FULL)
    ax1.set_ylabel("log term")
    ax1.set_title(title or f"s = {scan.s:g}, verdict: {scan.verdict}")
    ax2.plot(ns, scan.partial_sums, lw=1.0, color=_NONFULL)
    ax2.set_yscale("log")
    ax2.set_ylabel("partial sum")
    ax2.set_xlabel("n")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def fig_mc_trend(experiments: Sequence[MeasureExperiment], path: str) -> str:
    """Hit fraction per window for a sequence of experiments."""
    fig, ax = plt.subplots(figsize=(7, 4))
    labels = [f"[{e.window[0]}, {e.window[1]}]" for e in experiments]
    fractions = [e.hit_fraction for e in experiments]
    ax.bar(range(len(experiments)), fractions, color=_FULL)
    ax.set_xticks(range(len(experiments)), labels, rotation=30, fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("hit fraction")
    ax.set_xlabel("window")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
