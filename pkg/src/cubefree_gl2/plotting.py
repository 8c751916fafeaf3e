"""Figures for oracle reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .oracle import OracleReport  # noqa: E402

STATUS_COLOURS = {"OK": "#4c72b0", "FAIL": "#c44e52", "EXCLUDED": "#8c8c8c"}


def plot_verification(reports: list[OracleReport], path: str | Path) -> Path:
    """Formula against oracle class counts, one bar pair per isomorphism type."""
    rows = [(rep.m, row) for rep in reports for row in rep.by_iso_type]
    path = Path(path)
    fig, ax = plt.subplots(figsize=(max(6.0, 0.45 * len(rows) + 2), 4.0))
    x = np.arange(len(rows))
    formula = [row.formula or 0 for _, row in rows]
    oracle = [row.oracle for _, row in rows]
    ax.bar(x - 0.2, formula, width=0.4, color="#dddddd", edgecolor="black", label="formula")
    ax.bar(x + 0.2, oracle, width=0.4, color=[STATUS_COLOURS[r.status] for _, r in rows], label="oracle")
    ax.set_xticks(x)
    ax.set_xticklabels([f"{m}: {row.fingerprint.split(' ')[0]}" for m, row in rows], rotation=70, fontsize=7)
    ax.set_ylabel("conjugacy classes")
    q = reports[0].q if reports else "?"
    ax.set_title(f"GL(2,{q}): class counts per isomorphism type")
    ax.legend(frameon=False)
    ax.spines[["top", "right"]].set_visible(False)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
