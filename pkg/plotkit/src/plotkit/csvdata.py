"""Reader for the simulator's CSV dialect.

Comma-separated, '.' decimal, '#'-prefixed `key = value` metadata lines.
Numeric columns come back as float arrays, text columns as string lists.
Failures are loud: a file without a header or without data rows is an error.
"""

from __future__ import annotations

import numpy as np


class CsvFormatError(ValueError):
    """The file does not follow the artifact CSV dialect."""


def load_csv(path):
    """Return (columns, metadata) for one artifact file."""
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[str]] = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    metadata[key.strip()] = value.strip()
                continue
            if header is None:
                header = line.split(",")
                continue
            cells = line.split(",")
            if len(cells) != len(header):
                raise CsvFormatError(f"{path}: row width {len(cells)} != "
                                     f"header width {len(header)}")
            rows.append(cells)
    if header is None:
        raise CsvFormatError(f"{path}: no header row")
    if not rows:
        raise CsvFormatError(f"{path}: empty CSV (no data rows)")
    columns: dict[str, object] = {}
    for j, name in enumerate(header):
        cells = [row[j] for row in rows]
        try:
            columns[name] = np.array([float(c) for c in cells])
        except ValueError:
            columns[name] = cells
    return columns, metadata
