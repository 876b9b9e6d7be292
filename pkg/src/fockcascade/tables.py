"""Delimited result tables: leading '#' metadata block, one header row,
17-significant-digit floats."""

from __future__ import annotations

import os

import numpy as np


def format_value(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def write_table(path, columns: dict, metadata=None) -> None:
    """columns: ordered name -> array mapping, equal lengths."""
    names = list(columns)
    arrays = [np.asarray(columns[k]) for k in names]
    lengths = {a.shape[0] for a in arrays}
    if len(lengths) != 1:
        raise ValueError(f"ragged columns: {sorted(lengths)}")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        for line in metadata or []:
            fh.write(f"# {line}\n")
        fh.write(",".join(names) + "\n")
        for i in range(arrays[0].shape[0]):
            fh.write(",".join(format_value(a[i]) for a in arrays) + "\n")


def read_table(path):
    """Returns (metadata lines, name -> float array mapping)."""
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
        raise ValueError(f"no header row in {path}")
    data = np.asarray(rows, dtype=float)
    if data.size == 0:
        data = data.reshape(0, len(header))
    return metadata, {name: data[:, j] for j, name in enumerate(header)}
