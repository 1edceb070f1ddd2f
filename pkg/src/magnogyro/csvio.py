"""Deterministic CSV emission for curves, traces, and sweeps.

Dialect: comma-separated, '.' decimal point, 17 significant digits (lossless
binary float round-trip), '#'-prefixed metadata header lines.  Identical
inputs must produce byte-identical files, so all formatting is explicit and
locale-independent.
"""

from __future__ import annotations

import io
from collections.abc import Mapping, Sequence

import numpy as np


def format_value(x) -> str:
    """Render one cell: floats at 17 significant digits, text verbatim."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    if isinstance(x, (complex, np.complexfloating)):
        raise TypeError("split complex values into re/im columns")
    return str(x)


def render_csv(columns: Mapping[str, Sequence], metadata: Mapping[str, object] | None = None) -> str:
    """Render named, equal-length columns with a '#'-metadata preamble."""
    if not columns:
        raise ValueError("no columns to write")
    arrays = {name: np.asarray(col) for name, col in columns.items()}
    lengths = {arr.shape[0] for arr in arrays.values()}
    if len(lengths) != 1:
        raise ValueError(f"ragged columns: lengths {sorted(lengths)}")

    buf = io.StringIO()
    for key, value in (metadata or {}).items():
        buf.write(f"# {key} = {format_value(value)}\n")
    buf.write(",".join(arrays.keys()) + "\n")
    n = lengths.pop()
    cols = list(arrays.values())
    for i in range(n):
        buf.write(",".join(format_value(col[i]) for col in cols) + "\n")
    return buf.getvalue()


def write_csv(path, columns: Mapping[str, Sequence], metadata: Mapping[str, object] | None = None) -> None:
    text = render_csv(columns, metadata)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def read_csv(path):
    """Read a file written by write_csv: returns (columns, metadata).

    Numeric cells are parsed to floats; everything else stays text.
    """
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
            rows.append(line.split(","))
    if header is None:
        raise ValueError(f"{path}: no header row")
    columns: dict[str, object] = {}
    for j, name in enumerate(header):
        cells = [row[j] for row in rows]
        try:
            columns[name] = np.array([float(c) for c in cells])
        except ValueError:
            columns[name] = cells
    return columns, metadata
