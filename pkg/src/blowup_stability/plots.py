"""Figure rendering for sweep reports (file output only)."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_sweep_figure(rows: Sequence, path: str | Path) -> Path:
    """Log-log plot of the transformed magnitude norm against the parameter.

    Solved rows are drawn with the fitted power law; rows with other statuses
    are listed in the legend so a failed sweep is visible at a glance.
    """
    path = Path(path)
    solved = [r for r in rows if r.status == "Solved" and r.b_norm > 0]
    others = [r for r in rows if r.status != "Solved"]
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    if solved:
        xs = [float(r.eps) for r in solved]
        ys = [r.b_norm for r in solved]
        ax.loglog(xs, ys, "o", color="tab:blue", label="solved")
        if len(solved) >= 2:
            lx = [math.log(x) for x in xs]
            ly = [math.log(y) for y in ys]
            n = len(lx)
            mx, my = sum(lx) / n, sum(ly) / n
            slope = sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sum(
                (a - mx) ** 2 for a in lx
            )
            fit = [math.exp(my + slope * (a - mx)) for a in lx]
            ax.loglog(xs, fit, "-", color="tab:gray", linewidth=1,
                      label=f"slope {slope:.3f}")
    if others:
        statuses = ", ".join(sorted({r.status for r in others}))
        ax.plot([], [], " ", label=f"unsolved rows: {statuses}")
    ax.set_xlabel("eps")
    ax.set_ylabel("b norm")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
