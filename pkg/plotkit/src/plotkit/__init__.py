"""Static figure rendering for gyroscope phase-sensitivity CSV artifacts.

The package is display-only: it never recomputes physics.  Curves come from
CSV columns, dashed asymptotes from CSV metadata, markers from the plotted
arrays themselves.
"""

from .csvdata import CsvFormatError, load_csv
from .recipes import FigureRecipe, PanelSpec, reference_figures
from .render import RecipeError, RenderResult, render

__version__ = "0.1.0"

__all__ = [
    "CsvFormatError",
    "FigureRecipe",
    "PanelSpec",
    "RecipeError",
    "RenderResult",
    "load_csv",
    "reference_figures",
    "render",
]
