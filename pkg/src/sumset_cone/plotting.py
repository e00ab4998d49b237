"""Static SVG figures of cones and sumset sizes.

Output is byte-identical across runs: the SVG id salt is fixed and the
date metadata is dropped.
"""

from __future__ import annotations

import io
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .cone import ConeData  # noqa: E402

_RC = {
    "svg.hashsalt": "sumset-cone",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _to_svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)
    return buf.getvalue()


def cone_plot_1d(
    cone: ConeData,
    h_max: int | None = None,
    bold: Sequence[int] = (),
    hollow: Sequence[int] = (),
    shade_minimals: Sequence[int] = (),
) -> str:
    """Points ``(a, h)`` of the cone over a 1-D set, one row per height.

    ``bold`` and ``hollow`` list residues mod ``b`` drawn as filled circles
    and open squares; minimal elements of residues in ``shade_minimals`` get
    a shaded box.  With no styling every point is a plain dot.
    """
    b = max(v[0] for v in cone.vertices) - min(v[0] for v in cone.vertices)
    top = cone.h_max if h_max is None else min(h_max, cone.h_max)
    minimal_pts = {(m.point[0], m.height) for m in cone.all_minimals()}
    groups: dict[str, list] = {"plain": [], "bold": [], "hollow": []}
    for h in range(top + 1):
        for (g,) in sorted(cone.levels[h]):
            r = g % b if b else 0
            kind = "bold" if r in bold else "hollow" if r in hollow else "plain"
            groups[kind].append((g, h))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.06 * b * top + 2), 0.45 * top + 1.5))
        shaded = [p for p in sorted(minimal_pts) if p[1] <= top and (p[0] % b if b else 0) in shade_minimals]
        if shaded:
            ax.scatter(*zip(*shaded), marker="s", s=110, color="0.8", zorder=1, label="minimal")
        if groups["plain"]:
            ax.scatter(*zip(*groups["plain"]), s=6, color="0.5", zorder=2)
        if groups["bold"]:
            ax.scatter(*zip(*groups["bold"]), s=30, color="black", zorder=3)
        if groups["hollow"]:
            ax.scatter(*zip(*groups["hollow"]), marker="s", s=30, facecolors="none",
                       edgecolors="black", zorder=3)
        ax.set_xlabel("a")
        ax.set_ylabel("h")
        ax.set_yticks(range(top + 1))
        return _to_svg(fig)


def level_slices_2d(cone_or_levels, heights: Sequence[int], shade_minimals: bool = True) -> str:
    """Side-by-side scatter plots of ``hA`` for a 2-D set, one panel per height."""
    if isinstance(cone_or_levels, ConeData):
        levels = cone_or_levels.levels
        minimals = {(m.point, m.height) for m in cone_or_levels.all_minimals()}
    else:
        levels, minimals = cone_or_levels, set()
    heights = list(heights)
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(1, len(heights), figsize=(3.0 * len(heights), 3.2), squeeze=False)
        for ax, h in zip(axes[0], heights):
            pts = sorted(levels[h])
            ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=8, color="black")
            mins = sorted(p for p, hh in minimals if hh == h)
            if shade_minimals and mins:
                ax.scatter([p[0] for p in mins], [p[1] for p in mins], marker="s", s=60,
                           color="0.75", zorder=0)
            ax.set_title(f"h = {h}")
            ax.set_aspect("equal")
        return _to_svg(fig)


def cardinality_plot(sizes: Sequence[int], formula: Sequence | None = None, label: str = "formula") -> str:
    """``|hA|`` against h, with an optional closed form overlaid."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.5, 3.2))
        hs = list(range(len(sizes)))
        ax.plot(hs, list(sizes), "o", color="black", ms=3, label="|hA|")
        if formula is not None:
            ax.plot(hs, [float(v) for v in formula], "-", color="0.5", lw=1, label=label)
            ax.legend(frameon=False)
        ax.set_xlabel("h")
        ax.set_ylabel("|hA|")
        return _to_svg(fig)
