from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from boostfuse.boosting.binning import BinArray, BinMapper
from boostfuse.boosting.exact import SplitCandidate, better
from boostfuse.boosting.objective import Gradients, split_gains
from boostfuse.errors import ArgumentError
from boostfuse.utils.parallel import ordered_map

FloatArray = npt.NDArray[np.float64]
CountArray = npt.NDArray[np.int64]
IndexArray = npt.NDArray[np.intp]


@dataclass(frozen=True)
class Histogram:
    """Per feature, per bin sums of g, h and row counts (features x bins)."""

    sum_g: FloatArray
    sum_h: FloatArray
    count: CountArray
    n_bins: Tuple[int, ...]

    def __add__(self, other: 'Histogram') -> 'Histogram':
        return Histogram(
            sum_g=self.sum_g + other.sum_g,
            sum_h=self.sum_h + other.sum_h,
            count=self.count + other.count,
            n_bins=self.n_bins,
        )

    def __sub__(self, other: 'Histogram') -> 'Histogram':
        return Histogram(
            sum_g=self.sum_g - other.sum_g,
            sum_h=self.sum_h - other.sum_h,
            count=self.count - other.count,
            n_bins=self.n_bins,
        )

    def totals(self, feature: int = 0) -> Tuple[float, float, int]:
        return (
            float(self.sum_g[feature].sum()),
            float(self.sum_h[feature].sum()),
            int(self.count[feature].sum()),
        )

    @property
    def nbytes(self) -> int:
        return self.sum_g.nbytes + self.sum_h.nbytes + self.count.nbytes


def build_histogram(
    rows: IndexArray,
    grads: Gradients,
    bins: BinArray,
    n_bins: Tuple[int, ...],
) -> Histogram:
    rows = np.asarray(rows, dtype=np.intp)
    if rows.shape[0] == 0:
        raise ArgumentError('Cannot build a histogram over zero rows')

    width = max(n_bins)
    g = grads.g[rows]
    h = grads.h[rows]

    def accumulate(feature: int) -> Tuple[FloatArray, FloatArray, CountArray]:
        codes = bins[rows, feature]
        return (
            np.bincount(codes, weights=g, minlength=width),
            np.bincount(codes, weights=h, minlength=width),
            np.bincount(codes, minlength=width).astype(np.int64),
        )

    parts = ordered_map(accumulate, range(bins.shape[1]))
    return Histogram(
        sum_g=np.stack([part[0] for part in parts]),
        sum_h=np.stack([part[1] for part in parts]),
        count=np.stack([part[2] for part in parts]),
        n_bins=n_bins,
    )


def _feature_best_split(
    hist: Histogram,
    feature: int,
    mu: float,
    gamma: float,
    min_samples_leaf: int,
) -> Optional[SplitCandidate]:
    width = hist.n_bins[feature]
    if width < 2:
        return None

    g_prefix = np.cumsum(hist.sum_g[feature, :width])
    h_prefix = np.cumsum(hist.sum_h[feature, :width])
    count_prefix = np.cumsum(hist.count[feature, :width])
    total = int(count_prefix[-1])

    # boundary b puts bins 0..b on the left; empty bins add no new partition
    left_count = count_prefix[:-1]
    valid = (
        (hist.count[feature, : width - 1] > 0)
        & (left_count >= min_samples_leaf)
        & (total - left_count >= min_samples_leaf)
    )
    if not valid.any():
        return None

    gains = split_gains(
        g_prefix[:-1],
        h_prefix[:-1],
        float(g_prefix[-1]),
        float(h_prefix[-1]),
        mu,
        gamma,
    )
    gains = np.where(valid, gains, -np.inf)
    boundary = int(np.argmax(gains))
    gain = float(gains[boundary])
    if not gain > 0:
        return None
    return SplitCandidate(
        feature=feature, threshold=np.nan, gain=gain, bin=boundary
    )


def best_split_from_histogram(
    hist: Histogram,
    mu: float,
    gamma: float,
    min_samples_leaf: int,
    mapper: Optional[BinMapper] = None,
) -> Optional[SplitCandidate]:
    """Scan the bin boundaries of every feature, O(bins) per feature.

    Ties go to the lower feature index, then the lower boundary. With a
    ``mapper`` the candidate carries the real-valued threshold.
    """
    best: Optional[SplitCandidate] = None
    for feature in range(hist.sum_g.shape[0]):
        best = better(
            best,
            _feature_best_split(hist, feature, mu, gamma, min_samples_leaf),
        )
    if best is not None and mapper is not None and best.bin is not None:
        best = SplitCandidate(
            feature=best.feature,
            threshold=mapper.threshold(best.feature, best.bin),
            gain=best.gain,
            bin=best.bin,
        )
    return best
