"""Matplotlib renderings of the report outputs (PNG/PDF files)."""

from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Polygon as MplPolygon

from .analysis import BoundsRow, LOWER_CONST, UPPER_CONST
from .atlas import ParamRegion


def render_bounds_figure(rows: Sequence[BoundsRow], path: str) -> None:
    """Ratio per word length against the two asymptotic constants."""
    ns = [row.n for row in rows]
    ratios = [float(row.ratio) for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ns, ratios, "o-", color="#1f4e9c", label="pi^2 * count / N^4")
    ax.axhline(float(UPPER_CONST), color="#c0392b", ls="--", label=f"upper constant {UPPER_CONST}")
    ax.axhline(float(LOWER_CONST), color="#27ae60", ls="--", label=f"lower constant {LOWER_CONST}")
    ax.set_yscale("log")
    ax.set_xlabel("N")
    ax.set_ylabel("ratio")
    ax.set_xticks(ns)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_atlas_figure(
    regions: Sequence[ParamRegion], path: str, length: Optional[int] = None
) -> None:
    """The subdivided parameter triangle with region indices."""
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    cmap = plt.get_cmap("Pastel1")
    for i, region in enumerate(regions):
        xy = [(float(e), float(l)) for e, l in region.polygon]
        ax.add_patch(MplPolygon(xy, closed=True, facecolor=cmap(i % 9), edgecolor="black", lw=0.7))
        ce, cl = region.sample()
        ax.text(float(ce), float(cl), str(i + 1), ha="center", va="center", fontsize=8)
    ax.plot([0, 0.5, 1, 0], [1, 0.5, 1, 1], color="black", lw=1.4)
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(0.45, 1.05)
    ax.set_xlabel("eps")
    ax.set_ylabel("ell")
    if length is None and regions and regions[0].factor_list:
        length = len(regions[0].factor_list[0])
    if length is not None:
        ax.set_title(f"factor lists of length {length}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
