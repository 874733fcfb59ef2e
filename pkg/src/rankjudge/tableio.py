"""CSV ingestion.

Expected shape: a header row of names, then one row per series, each
starting with its name. With orientation "algorithms-in-rows" (default)
the body rows are algorithms and the header names datasets; with
"algorithms-in-columns" it is the transpose (datasets in rows). Both
orientations of the same data load to identical PerformanceMatrix content.
Comma separated, UTF-8, no quoting expected; cells are stripped of
surrounding whitespace. Error messages cite 1-based file row/column.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .ranking import PerformanceMatrix

ORIENTATIONS = ("algorithms-in-rows", "algorithms-in-columns")


def load_csv(path, orientation: str = "algorithms-in-rows") -> PerformanceMatrix:
    """Load a performance table, normalizing to algorithms x datasets."""
    if orientation not in ORIENTATIONS:
        raise ValidationError(
            f"orientation must be one of {ORIENTATIONS}, got {orientation!r}"
        )
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            raw = [(lineno, row) for lineno, row in enumerate(csv.reader(fh), start=1)]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc

    rows = [
        (lineno, [cell.strip() for cell in row])
        for lineno, row in raw
        if any(cell.strip() for cell in row)
    ]
    if not rows:
        raise ValidationError(f"{path}: empty table")

    header_line, header = rows[0]
    body = rows[1:]
    if len(header) < 2:
        raise ValidationError(
            f"{path}: header (row {header_line}) names no data columns"
        )
    if not body:
        raise ValidationError(f"{path}: no data rows below the header")

    col_names = header[1:]
    _check_unique(path, col_names, f"header (row {header_line})")

    row_names: list[str] = []
    values: list[list[float]] = []
    for lineno, row in body:
        if len(row) != len(header):
            raise ParseError(
                f"{path}: row {lineno} has {len(row)} cells, expected "
                f"{len(header)} from the header"
            )
        if not row[0]:
            raise ParseError(f"{path}: row {lineno}, column 1: empty name")
        row_names.append(row[0])
        parsed = []
        for col, cell in enumerate(row[1:], start=2):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"{path}: row {lineno}, column {col}: could not parse "
                    f"{cell!r} as a number"
                ) from None
        values.append(parsed)
    _check_unique(path, row_names, "first column")

    data = np.array(values, dtype=float)
    if orientation == "algorithms-in-rows":
        algos, dsets = row_names, col_names
    else:
        algos, dsets = col_names, row_names
        data = data.T
    return PerformanceMatrix(
        algorithm_names=tuple(algos),
        dataset_names=tuple(dsets),
        values=data,
    )


def _check_unique(path: Path, names: list[str], where: str) -> None:
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise ParseError(f"{path}: duplicate name {name!r} in {where}")
        seen.add(name)
