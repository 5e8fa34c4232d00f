"""Figures for the CLI reports: homology tables and component cohomology."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .homology import BigradedAbelianGroup, Cell, render_cell  # noqa: E402


def plot_table(H: BigradedAbelianGroup, path: str, title: str = "", highlight=(),
               divisor_chain: bool = False) -> None:
    """Draw H in the published layout: h across, q down (descending).

    Cells listed in ``highlight`` (as (h, q) pairs) are shaded, e.g. the
    bidegrees where a computation disagrees with a reference table.
    """
    cells = {k: c for k, c in H.items() if not c.is_zero()}
    highlight = {tuple(k) for k in highlight}
    hs = sorted({h for h, _ in cells} | {h for h, _ in highlight}) or [0]
    qs = sorted({q for _, q in cells} | {q for _, q in highlight}, reverse=True) or [0]
    hs = list(range(hs[0], hs[-1] + 1))
    if qs:
        step = 2 if all((q - qs[-1]) % 2 == 0 for q in qs) else 1
        qs = list(range(qs[0], qs[-1] - 1, -step))
    text = [[render_cell(cells[(h, q)], divisor_chain=divisor_chain) if (h, q) in cells else ""
             for h in hs] for q in qs]
    colors = [["#f4c7c3" if (h, q) in highlight else ("#eef3fb" if (h, q) in cells else "white")
               for h in hs] for q in qs]
    width = max(4.0, 0.9 * len(hs) + 1.2)
    height = max(2.0, 0.32 * len(qs) + 0.8)
    fig, ax = plt.subplots(figsize=(width, height))
    ax.axis("off")
    table = ax.table(cellText=text, cellColours=colors, rowLabels=[str(q) for q in qs],
                     colLabels=[str(h) for h in hs], loc="center", cellLoc="center")
    table.auto_set_font_size(False)
    table.set_fontsize(8)
    table.scale(1, 1.1)
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def plot_components(groups: list[tuple[str, dict[int, Cell]]], path: str, title: str = "") -> None:
    """Bar chart of free ranks per cohomological degree, one panel per component.

    Torsion is written above the bars.
    """
    n = max(len(groups), 1)
    fig, axes = plt.subplots(n, 1, figsize=(6, 1.8 * n + 0.6), squeeze=False)
    for ax, (label, H) in zip(axes[:, 0], groups):
        degs = sorted(H)
        top = max(degs, default=0)
        ranks = [H[d].rank if d in H else 0 for d in range(top + 1)]
        ax.bar(range(top + 1), ranks, color="#4c72b0")
        for d in degs:
            if H[d].torsion:
                ax.text(d, H[d].rank + 0.05, ",".join(f"Z{t}" for t in H[d].torsion),
                        ha="center", va="bottom", fontsize=7, color="#c44e52")
        ax.set_ylabel(label, fontsize=8)
        ax.set_xlim(-0.6, top + 0.6)
        ax.set_ylim(0, max(ranks + [1]) + 0.8)
        ax.tick_params(labelsize=7)
    axes[-1, 0].set_xlabel("degree")
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
