from typing import Optional

import numpy as np
import numpy.typing as npt

from boostfuse.errors import ArgumentError, DegenerateSeriesError
from boostfuse.schema.report.correlation import Strength

STRONG_THRESHOLD = 0.5
WEAK_THRESHOLD = 0.3


def pearson(x: npt.ArrayLike, y: npt.ArrayLike) -> float:
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ArgumentError(
            f'Series must be 1-d and of equal length: {xs.shape} {ys.shape}'
        )
    if xs.size < 2:
        raise DegenerateSeriesError(f'Need at least 2 samples, got {xs.size}')
    if np.ptp(xs) == 0 or np.ptp(ys) == 0:
        raise DegenerateSeriesError('Series has zero variance')

    dx = xs - xs.mean()
    dy = ys - ys.mean()
    r = np.sum(dx * dy) / (np.sqrt(np.sum(dx * dx)) * np.sqrt(np.sum(dy * dy)))
    return float(np.clip(r, -1.0, 1.0))


def try_pearson(x: npt.ArrayLike, y: npt.ArrayLike) -> Optional[float]:
    try:
        return pearson(x, y)
    except DegenerateSeriesError:
        return None


def classify_strength(r: float) -> Strength:
    # |r| = 0.5 is Moderate, |r| = 0.3 is Weak
    magnitude = abs(r)
    if magnitude > STRONG_THRESHOLD:
        return Strength.strong
    if magnitude <= WEAK_THRESHOLD:
        return Strength.weak
    return Strength.moderate
