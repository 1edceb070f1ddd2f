"""Command-line entry: render figure analogs from an artifact directory."""

from __future__ import annotations

import argparse
import sys

from .csvdata import CsvFormatError
from .recipes import reference_figures
from .render import RecipeError, render


def main(argv=None) -> int:
    figures = reference_figures()
    parser = argparse.ArgumentParser(
        prog="plotkit-render",
        description="Render reference-figure analogs from simulation CSVs.")
    parser.add_argument("figure", choices=[*figures, "all"],
                        help="Figure id to render, or 'all'.")
    parser.add_argument("--csv-dir", required=True,
                        help="Directory holding the preset CSV artifacts.")
    parser.add_argument("--out-dir", default=".",
                        help="Where to write PNG/SVG output.")
    args = parser.parse_args(argv)

    ids = list(figures) if args.figure == "all" else [args.figure]
    try:
        for fid in ids:
            result = render(figures[fid], args.csv_dir, args.out_dir)
            print(result.png)
            print(result.svg)
    except (RecipeError, CsvFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
