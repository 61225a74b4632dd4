"""Matplotlib renderings written next to the verification report files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_STATUS_COLORS = {"pass": "#4c9f70", "fail": "#c0504d", "undecided": "#e8b33d"}


def save_report_summary(summary: dict[str, dict[str, int]], path: str | Path) -> None:
    """Stacked bar per check: pass/fail/undecided counts."""
    checks = sorted(summary)
    fig, ax = plt.subplots(figsize=(8, 0.6 * max(4, len(checks))))
    bottoms = [0] * len(checks)
    for status in ("pass", "fail", "undecided"):
        values = [summary[c].get(status, 0) for c in checks]
        ax.barh(checks, values, left=bottoms, color=_STATUS_COLORS[status], label=status)
        bottoms = [b + v for b, v in zip(bottoms, values)]
    ax.set_xlabel("checks")
    ax.legend(loc="lower right")
    ax.set_title("verification summary")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_cut_profile(
    profile: list[int], bound: int, title: str, path: str | Path
) -> None:
    """Mim value at every prefix cut of a certified order, with the bound line."""
    fig, ax = plt.subplots(figsize=(8, 4))
    positions = list(range(1, len(profile) + 1))
    ax.step(positions, profile, where="mid", color="#2b6ca3", label="cut mim value")
    ax.axhline(bound, color="#c0504d", linestyle="--", label=f"bound {bound}")
    ax.set_xlabel("prefix length")
    ax.set_ylabel("induced matching size")
    ax.set_ylim(0, max(bound, max(profile, default=1)) + 1)
    ax.set_title(title)
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
