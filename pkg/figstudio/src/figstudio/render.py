"""Deterministic rendering of figure recipes to PNG files.

The plotted arrays are exactly the parsed table columns: no resampling,
no smoothing.  Output is byte-stable for fixed inputs (Agg backend,
fixed size and fonts, PNG metadata stripped).
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .recipe import FigureRecipe
from .tables import column, read_table

PANEL_SIZE = (5.0, 3.6)
DPI = 110


def load_series(recipe: FigureRecipe, data_root="."):
    """Per-panel plotting data: list of (path, x, y, {overlay: column}).

    This is the handoff point: render() plots these arrays unchanged.
    """
    panels = []
    for rel in recipe.tables:
        path = os.path.join(data_root, rel)
        _, cols = read_table(path)
        x = column(cols, recipe.x, path)
        y = column(cols, recipe.y, path)
        overlays = {name: column(cols, name, path)
                    for name in recipe.overlays}
        panels.append((path, x, y, overlays))
    return panels


def render(recipe: FigureRecipe, data_root=".", outdir=".") -> str:
    """Render the recipe; returns the written image path."""
    panels = load_series(recipe, data_root)
    n = len(panels)
    fig, axes = plt.subplots(
        1, n, figsize=(PANEL_SIZE[0] * n, PANEL_SIZE[1]), squeeze=False)
    for ax, (path, x, y, overlays) in zip(axes[0], panels):
        ax.plot(x, y, "o", markersize=2.5, label=recipe.y)
        for name, series in overlays.items():
            ax.plot(x, series, "-", linewidth=1.2, label=name)
        ax.set_xscale(recipe.xscale)
        ax.set_yscale(recipe.yscale)
        ax.set_xlabel(recipe.xlabel or recipe.x)
        ax.set_ylabel(recipe.ylabel or recipe.y)
        if n > 1:
            ax.set_title(os.path.splitext(os.path.basename(path))[0],
                         fontsize=9)
        if overlays:
            ax.legend(fontsize=8)
    if recipe.title:
        fig.suptitle(recipe.title)
    fig.tight_layout()

    out = os.path.join(outdir, recipe.output)
    parent = os.path.dirname(os.path.abspath(out))
    os.makedirs(parent, exist_ok=True)
    fig.savefig(out, dpi=DPI, metadata={"Software": None})
    plt.close(fig)
    return out
