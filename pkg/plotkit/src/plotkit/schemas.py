"""CSV schemas plotkit accepts, one per figure kind.

The simulator CLI writes a handful of fixed CSV layouts; the figure kinds
map onto them one to one. Readers validate the header before touching any
data so a mismatched file fails with the expected header in the message,
not with a parse error three columns in.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

KIND_HEADERS: dict[str, tuple[str, ...]] = {
    "heatmap": ("x_m", "y_m", "snr_gain_db"),
    "cdf": ("snr_gain_db", "cum_fraction"),
    "line": ("row_index", "phase_rad"),
    "hist": ("bin_low_rad", "bin_high_rad", "count"),
    "bar": ("method", "mean_snr_db", "n_ue", "seed"),
}

KINDS = tuple(KIND_HEADERS)

# every column is numeric except the method name in the averages table
_TEXT_COLUMNS = {"method"}


class SchemaError(ValueError):
    """The file's header does not match the schema its figure kind needs."""


def read_table(path: str | Path, kind: str) -> dict[str, np.ndarray]:
    """Read one CSV for `kind`, returning a column-name -> array mapping.

    Numeric columns come back as float arrays, text columns as object
    arrays of str. Raises SchemaError on a wrong header, ValueError on a
    malformed row, OSError if the file cannot be read.
    """
    if kind not in KIND_HEADERS:
        raise ValueError(f"unknown figure kind {kind!r}; expected one of {', '.join(KINDS)}")
    expected = KIND_HEADERS[kind]
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise SchemaError(
                f"{path}: empty file; expected header {','.join(expected)}"
            ) from None
        if header != expected:
            raise SchemaError(
                f"{path}: header {','.join(header)} does not match kind {kind!r}; "
                f"expected header {','.join(expected)}"
            )
        rows = list(reader)

    for i, row in enumerate(rows, start=2):
        if len(row) != len(expected):
            raise ValueError(f"{path}:{i}: expected {len(expected)} fields, found {len(row)}")

    columns: dict[str, np.ndarray] = {}
    for j, name in enumerate(expected):
        cells = [row[j] for row in rows]
        if name in _TEXT_COLUMNS:
            columns[name] = np.array(cells, dtype=object)
        else:
            try:
                columns[name] = np.array([float(c) for c in cells])
            except ValueError as exc:
                raise ValueError(f"{path}: non-numeric value in column {name}: {exc}") from None
    return columns
