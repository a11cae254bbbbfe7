from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import numpy.typing as npt

from boostfuse.boosting.tree import midpoint
from boostfuse.errors import ArgumentError
from boostfuse.ingest.matrix import DataMatrix

FloatArray = npt.NDArray[np.float64]
BinArray = npt.NDArray[np.unsignedinteger]


@dataclass(frozen=True)
class BinMapper:
    """Per-feature bin edges.

    ``edges[j]`` holds the finite upper edges of bins ``0 .. len - 1``;
    the last bin is unbounded above. A value v lands in the first bin whose
    edge satisfies ``v <= edge``, so values outside the training range clamp
    to the first or last bin.
    """

    edges: Tuple[FloatArray, ...]
    value_range: Tuple[Tuple[float, float], ...]

    @property
    def n_features(self) -> int:
        return len(self.edges)

    def n_bins(self, feature: int) -> int:
        return int(self.edges[feature].shape[0]) + 1

    @property
    def max_bins(self) -> int:
        return max(self.n_bins(j) for j in range(self.n_features))

    def splittable(self, feature: int) -> bool:
        return self.n_bins(feature) > 1

    def threshold(self, feature: int, bin_: int) -> float:
        """Split threshold between ``bin_`` and ``bin_ + 1``."""
        return float(self.edges[feature][bin_])


def _feature_edges(column: FloatArray, k: int) -> FloatArray:
    distinct = np.unique(column)
    if distinct.shape[0] <= k:
        positions = np.arange(distinct.shape[0] - 1)
    else:
        # empirical quantiles, mapped back onto data values
        probabilities = np.arange(1, k) / k
        cuts = np.quantile(column, probabilities, method='inverted_cdf')
        positions = np.unique(np.searchsorted(distinct, cuts))
        positions = positions[positions < distinct.shape[0] - 1]
    return np.array(
        [midpoint(distinct[p], distinct[p + 1]) for p in positions],
        dtype=np.float64,
    )


def build_bins(matrix: DataMatrix, k: int = 255) -> BinMapper:
    if k < 2:
        raise ArgumentError(f'Bin count must be >= 2, got {k}')
    edges: List[FloatArray] = []
    ranges: List[Tuple[float, float]] = []
    for j in range(matrix.n_features):
        column = matrix.rows[:, j]
        feature_edges = _feature_edges(column, k)
        feature_edges.setflags(write=False)
        edges.append(feature_edges)
        ranges.append((float(column.min()), float(column.max())))
    return BinMapper(edges=tuple(edges), value_range=tuple(ranges))


def bin_dtype(mapper: BinMapper) -> type[np.unsignedinteger]:
    return np.uint8 if mapper.max_bins <= 256 else np.uint16


def bin_features(matrix: DataMatrix, mapper: BinMapper) -> BinArray:
    return bin_rows(matrix.rows, mapper)


def bin_rows(rows: FloatArray, mapper: BinMapper) -> BinArray:
    if rows.ndim != 2 or rows.shape[1] != mapper.n_features:
        raise ArgumentError(
            f'Expected {mapper.n_features} features, got shape {rows.shape}'
        )
    binned = np.empty(rows.shape, dtype=bin_dtype(mapper))
    for j, feature_edges in enumerate(mapper.edges):
        binned[:, j] = np.searchsorted(feature_edges, rows[:, j], side='left')
    return binned


@dataclass(frozen=True)
class BinnedMatrix:
    matrix: DataMatrix
    mapper: BinMapper
    bins: BinArray

    @classmethod
    def from_matrix(cls, matrix: DataMatrix, k: int = 255) -> 'BinnedMatrix':
        mapper = build_bins(matrix, k)
        return cls(
            matrix=matrix, mapper=mapper, bins=bin_features(matrix, mapper)
        )
