"""Render figure recipes to PNG + SVG.

Pure display of CSV content: curves come from columns, dashed asymptote
overlays from metadata values, red dots from the plotted arrays themselves.
Missing columns and empty CSVs fail loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .csvdata import load_csv  # noqa: E402
from .recipes import FigureRecipe, PanelSpec  # noqa: E402


class RecipeError(KeyError):
    """A recipe references a column the CSV does not provide."""


@dataclass
class RenderResult:
    """What was written and which overlay values were drawn."""

    figure_id: str
    png: Path
    svg: Path
    overlays: dict = field(default_factory=dict)  # panel title -> [values]
    points_plotted: dict = field(default_factory=dict)  # panel title -> count


def _require_columns(columns, names, source):
    for name in names:
        if name and name not in columns:
            raise RecipeError(f"{source}: column {name!r} not in CSV "
                              f"(has {sorted(columns)})")


def _row_mask(columns, where, n):
    mask = np.ones(n, dtype=bool)
    for key, wanted in where.items():
        col = columns[key]
        if isinstance(col, np.ndarray):
            mask &= np.isclose(col, float(wanted))
        else:
            mask &= np.array([c == str(wanted) for c in col])
    return mask


def _finite(x, y):
    ok = np.isfinite(x) & np.isfinite(y)
    return x[ok], y[ok]


def _draw_panel(ax, panel: PanelSpec, csv_dir: Path, result: RenderResult):
    columns, metadata = load_csv(csv_dir / panel.source)
    needed = [panel.x, panel.y, panel.group_by, *panel.where]
    _require_columns(columns, [n for n in needed if n], panel.source)

    x_all = np.asarray(columns[panel.x], dtype=float)
    y_all = np.asarray(columns[panel.y], dtype=float)
    base = _row_mask(columns, panel.where, x_all.size)

    if panel.group_by is None:
        groups = [(None, base)]
    else:
        col = columns[panel.group_by]
        if isinstance(col, np.ndarray):
            values = list(dict.fromkeys(col.tolist()))
            groups = [(v, base & np.isclose(col, v)) for v in values]
        else:
            values = list(dict.fromkeys(col))
            groups = [(v, base & np.array([c == v for c in col]))
                      for v in values]

    total = 0
    for value, mask in groups:
        x, y = _finite(x_all[mask], y_all[mask])
        if panel.yscale == "log":
            keep = y > 0
            x, y = x[keep], y[keep]
        label = None if value is None else f"{panel.group_by} = {value:g}" \
            if isinstance(value, float) else f"{panel.group_by} = {value}"
        if panel.style == "points":
            ax.plot(x, y, "o", ms=3, label=label)
        else:
            ax.plot(x, y, lw=1.0, label=label)
        total += x.size
    if total == 0:
        raise RecipeError(f"{panel.source}: nothing to plot "
                          f"({panel.y} has no finite values after filtering)")

    drawn = []
    for key in panel.asymptote_keys:
        if key not in metadata:
            raise RecipeError(f"{panel.source}: metadata key {key!r} missing")
        value = float(metadata[key])
        ax.axhline(value, ls="--", color="k", lw=0.8)
        drawn.append(value)

    if panel.mark_minimum:
        x, y = _finite(x_all[base], y_all[base])
        k = int(np.argmin(y))
        ax.plot([x[k]], [y[k]], "o", color="red", ms=6, zorder=5)

    ax.set_xlabel(panel.xlabel or panel.x)
    ax.set_ylabel(panel.ylabel or panel.y)
    ax.set_yscale(panel.yscale)
    if panel.title:
        ax.set_title(panel.title, fontsize=10)
    if panel.group_by is not None:
        ax.legend(fontsize=7)

    key = panel.title or panel.source
    result.overlays[key] = drawn
    result.points_plotted[key] = total


def render(recipe: FigureRecipe, csv_dir, out_dir) -> RenderResult:
    """Draw every panel of one figure and write PNG + SVG."""
    csv_dir = Path(csv_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    n = len(recipe.panels)
    ncols = min(recipe.ncols, n)
    nrows = math.ceil(n / ncols)
    fig, axes = plt.subplots(nrows, ncols,
                             figsize=(4.2 * ncols, 3.2 * nrows))
    axes = np.atleast_1d(axes).ravel()

    result = RenderResult(recipe.figure_id,
                          out_dir / f"{recipe.figure_id}.png",
                          out_dir / f"{recipe.figure_id}.svg")
    try:
        for panel, ax in zip(recipe.panels, axes):
            _draw_panel(ax, panel, csv_dir, result)
        for ax in axes[n:]:
            ax.set_visible(False)
        fig.tight_layout()
        fig.savefig(result.png, dpi=150)
        fig.savefig(result.svg)
    finally:
        plt.close(fig)
    return result
