"""Matplotlib renderings of windows, reports, images and density rasters.

Figures are written as SVG with a fixed hash salt and no date stamp so that
identical inputs give identical bytes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .lie_core import Box, Weight  # noqa: E402

_RC = {"svg.hashsalt": "spincq", "svg.fonttype": "none", "path.simplify": False}


def _save(fig, path: Path) -> None:
    with matplotlib.rc_context(_RC):
        fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def window_figure(values: np.ndarray, box: Box, title: str, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    if box.rank == 1:
        xs = np.arange(box.lo[0], box.hi[0] + 1)
        ax.bar(xs, values, color=["tab:red" if v < 0 else "tab:blue" for v in values])
        ax.axhline(0, color="black", lw=0.5)
        ax.set_xlabel("weight")
        ax.set_ylabel("multiplicity")
    else:
        _heat(ax, values, box)
    ax.set_title(title)
    _save(fig, path)


def _heat(ax, values: np.ndarray, box: Box) -> None:
    vmax = max(1, int(np.abs(values).max()) if values.size else 1)
    extent = (box.lo[0] - 0.5, box.hi[0] + 0.5, box.lo[1] - 0.5, box.hi[1] + 0.5)
    im = ax.imshow(values.T, origin="lower", extent=extent, cmap="coolwarm_r", vmin=-vmax, vmax=vmax)
    ax.figure.colorbar(im, ax=ax)
    ax.set_xlabel("t1 exponent")
    ax.set_ylabel("t2 exponent")


def report_figure(labels: Sequence[str], m: Sequence[int], q: Sequence[int], title: str, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(max(6, 0.25 * len(labels)), 4))
    xs = np.arange(len(labels))
    ax.plot(xs, m, "o", label="multiplicity m", color="tab:blue")
    ax.plot(xs, q, "x", label="reduced index q", color="tab:red")
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, rotation=90, fontsize=6)
    ax.axhline(0, color="black", lw=0.5)
    ax.legend()
    ax.set_title(title)
    fig.tight_layout()
    _save(fig, path)


def raster_figure(raster: np.ndarray, extent: tuple[float, float, float, float], title: str, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(5, 5))
    im = ax.imshow(raster.T, origin="lower", extent=extent, cmap="coolwarm_r", vmin=-1, vmax=1,
                   interpolation="nearest")
    fig.colorbar(im, ax=ax)
    ax.set_title(title)
    _save(fig, path)


def image_figure(pieces: Sequence[Sequence[Weight]], marks: Sequence[Weight], title: str, path: Path,
                 labels: Optional[Sequence[str]] = None) -> None:
    fig, ax = plt.subplots(figsize=(5, 5))
    for piece in pieces:
        pts = [tuple(float(c) for c in v) for v in piece]
        if len(pts[0]) == 1:
            xs = [p[0] for p in pts]
            ax.plot([min(xs), max(xs)], [0, 0], lw=4, color="tab:blue")
        elif len(pts) <= 2:
            ax.plot([p[0] for p in pts], [p[1] for p in pts], lw=3, color="tab:blue")
        else:
            from .reduction import _hull

            hull = [tuple(float(c) for c in v) for v in _hull(list(piece))]
            hull.append(hull[0])
            ax.fill([p[0] for p in hull], [p[1] for p in hull], alpha=0.3, color="tab:blue")
            ax.plot([p[0] for p in hull], [p[1] for p in hull], color="tab:blue")
    for i, v in enumerate(marks):
        x = float(v[0])
        y = float(v[1]) if len(v) > 1 else 0.0
        ax.plot([x], [y], "ko")
        if labels:
            ax.annotate(labels[i], (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)
    ax.set_title(title)
    ax.set_aspect("equal", adjustable="datalim")
    _save(fig, path)
