"""Performance matrices and per-dataset midranking.

The whole library works on one shape of data: an m x n real matrix with
algorithms in rows and datasets in columns. Ranking happens within each
column. Ties receive midranks (the mean of the positions they span), which
keeps every column sum at exactly m(m+1)/2 in floating point because
midranks are multiples of 0.5 and the sums involved are small integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import UnknownNameError, ValidationError

DIRECTIONS = ("higher-is-better", "lower-is-better")


def _as_name_tuple(names: Iterable[str], what: str) -> tuple[str, ...]:
    out = tuple(str(x) for x in names)
    if len(set(out)) != len(out):
        dupes = sorted({x for x in out if out.count(x) > 1})
        raise ValidationError(f"duplicate {what} name(s): {', '.join(dupes)}")
    return out


@dataclass(frozen=True, eq=False)
class PerformanceMatrix:
    """m algorithms by n datasets of finite real-valued scores.

    Immutable once constructed; the value array is copied and marked
    read-only. Whether large scores are good or bad is a property of the
    metric, not of the matrix, so direction is chosen at ranking time.
    """

    algorithm_names: tuple[str, ...]
    dataset_names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        algos = _as_name_tuple(self.algorithm_names, "algorithm")
        dsets = _as_name_tuple(self.dataset_names, "dataset")
        if len(algos) < 2:
            raise ValidationError(
                f"need at least two algorithms to compare, got {len(algos)}"
            )
        if len(dsets) < 1:
            raise ValidationError("need at least one dataset")
        values = np.array(self.values, dtype=float, copy=True)
        if values.shape != (len(algos), len(dsets)):
            raise ValidationError(
                f"values have shape {values.shape}, expected "
                f"({len(algos)}, {len(dsets)}) from the name lists"
            )
        bad = np.argwhere(~np.isfinite(values))
        if bad.size:
            i, j = bad[0]
            raise ValidationError(
                f"non-finite score {values[i, j]!r} for algorithm "
                f"{algos[i]!r} on dataset {dsets[j]!r}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "algorithm_names", algos)
        object.__setattr__(self, "dataset_names", dsets)
        object.__setattr__(self, "values", values)

    @property
    def m(self) -> int:
        return len(self.algorithm_names)

    @property
    def n(self) -> int:
        return len(self.dataset_names)

    def index(self, name: str) -> int:
        try:
            return self.algorithm_names.index(name)
        except ValueError:
            raise UnknownNameError(
                f"unknown algorithm {name!r}; have "
                f"{', '.join(self.algorithm_names)}"
            ) from None

    def row(self, name: str) -> np.ndarray:
        return self.values[self.index(name)]

    def to_dict(self) -> dict:
        return {
            "algorithms": list(self.algorithm_names),
            "datasets": list(self.dataset_names),
            "values": [list(map(float, row)) for row in self.values],
        }


def midrank_columns(values: np.ndarray, direction: str = "higher-is-better") -> np.ndarray:
    """Column-wise midranks of an (m, n) array.

    With "higher-is-better" the best (largest) value in a column gets rank m
    and the worst gets rank 1; "lower-is-better" flips that. Ranks are
    computed by pairwise counting, rank = (#below + #at-or-below + 1) / 2,
    which is O(m^2 n) but exact and fast for the small m this library
    targets.
    """
    if direction not in DIRECTIONS:
        raise ValidationError(
            f"direction must be one of {DIRECTIONS}, got {direction!r}"
        )
    v = np.asarray(values, dtype=float)
    if v.ndim != 2:
        raise ValidationError(f"expected a 2-d array, got shape {v.shape}")
    if direction == "lower-is-better":
        v = -v
    below = (v[np.newaxis, :, :] < v[:, np.newaxis, :]).sum(axis=1)
    at_or_below = (v[np.newaxis, :, :] <= v[:, np.newaxis, :]).sum(axis=1)
    return (below + at_or_below + 1) / 2.0


def midrank_1d(a: np.ndarray) -> np.ndarray:
    """Ascending midranks of a 1-d array (smallest value gets rank 1)."""
    a = np.asarray(a, dtype=float)
    below = (a[np.newaxis, :] < a[:, np.newaxis]).sum(axis=1)
    at_or_below = (a[np.newaxis, :] <= a[:, np.newaxis]).sum(axis=1)
    return (below + at_or_below + 1) / 2.0


@dataclass(frozen=True, eq=False)
class RankMatrix:
    """Per-dataset midranks plus their row sums and means.

    Column sums are exactly m(m+1)/2 by construction; rank_columns asserts
    this rather than trusting float arithmetic silently.
    """

    algorithm_names: tuple[str, ...]
    ranks: np.ndarray
    rank_sums: np.ndarray
    mean_ranks: np.ndarray
    direction: str

    @property
    def m(self) -> int:
        return len(self.algorithm_names)

    @property
    def n(self) -> int:
        return self.ranks.shape[1]

    def index(self, name: str) -> int:
        try:
            return self.algorithm_names.index(name)
        except ValueError:
            raise UnknownNameError(
                f"unknown algorithm {name!r}; have "
                f"{', '.join(self.algorithm_names)}"
            ) from None

    def mean_rank(self, name: str) -> float:
        return float(self.mean_ranks[self.index(name)])

    def to_dict(self) -> dict:
        return {
            "algorithms": list(self.algorithm_names),
            "direction": self.direction,
            "rank_sums": [float(x) for x in self.rank_sums],
            "mean_ranks": [float(x) for x in self.mean_ranks],
        }


def rank_columns(perf: PerformanceMatrix, direction: str = "higher-is-better") -> RankMatrix:
    """Rank every dataset column of a performance matrix."""
    ranks = midrank_columns(perf.values, direction)
    m = perf.m
    col_sums = ranks.sum(axis=0)
    expected = m * (m + 1) / 2.0
    # Midranks are halves of small integers, so this holds exactly.
    if not np.all(col_sums == expected):
        raise AssertionError(
            f"rank column sums {col_sums} != {expected}; ranking is broken"
        )
    rank_sums = ranks.sum(axis=1)
    mean_ranks = rank_sums / perf.n
    for arr in (ranks, rank_sums, mean_ranks):
        arr.setflags(write=False)
    return RankMatrix(
        algorithm_names=perf.algorithm_names,
        ranks=ranks,
        rank_sums=rank_sums,
        mean_ranks=mean_ranks,
        direction=direction,
    )


def restrict(perf: PerformanceMatrix, subset: Sequence[str]) -> PerformanceMatrix:
    """Sub-matrix holding only the named algorithms, in the order given.

    The subset must contain at least two distinct known names. Dataset
    columns are untouched, so re-ranking the result answers "what would the
    comparison look like had only these algorithms been run".
    """
    names = _as_name_tuple(subset, "algorithm")
    if len(names) < 2:
        raise ValidationError(
            f"subset must keep at least two algorithms, got {len(names)}"
        )
    rows = [perf.index(nm) for nm in names]
    return PerformanceMatrix(
        algorithm_names=names,
        dataset_names=perf.dataset_names,
        values=perf.values[rows, :],
    )
