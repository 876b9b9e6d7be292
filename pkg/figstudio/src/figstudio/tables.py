"""Reader for the simulation's delimited tables.

Format: optional leading '# ' metadata lines, one comma-separated header
row, then rows of 17-significant-digit numbers.
"""

from __future__ import annotations

import numpy as np


class TableError(ValueError):
    pass


def read_table(path):
    """Returns (metadata lines, name -> float64 column mapping)."""
    metadata = []
    header = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                metadata.append(line[1:].strip())
            elif header is None:
                header = line.split(",")
            else:
                rows.append([float(x) for x in line.split(",")])
    if header is None:
        raise TableError(f"no header row in {path}")
    data = np.asarray(rows, dtype=float)
    if data.size == 0:
        data = data.reshape(0, len(header))
    return metadata, {name: data[:, j] for j, name in enumerate(header)}


def column(columns: dict, name: str, path) -> np.ndarray:
    if name not in columns:
        raise TableError(
            f"column {name!r} not in {path} (has: {', '.join(columns)})")
    return columns[name]
