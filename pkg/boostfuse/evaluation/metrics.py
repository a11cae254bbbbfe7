import logging

import numpy as np
import numpy.typing as npt

from boostfuse.errors import ArgumentError
from boostfuse.schema.evaluation.metrics import Metrics

logger = logging.getLogger(__name__)


def metrics(
    predictions: npt.ArrayLike, actuals: npt.ArrayLike, band: float = 0.1
) -> Metrics:
    predicted = np.asarray(predictions, dtype=np.float64)
    actual = np.asarray(actuals, dtype=np.float64)
    if predicted.shape != actual.shape or predicted.ndim != 1:
        raise ArgumentError(
            f'Length mismatch: {predicted.shape} vs {actual.shape}'
        )
    if predicted.size == 0:
        raise ArgumentError('Metrics of an empty vector are undefined')
    if not band > 0:
        raise ArgumentError(f'Band must be positive, got {band}')

    error = predicted - actual
    squared = float(np.sum(error * error))

    r_squared = None
    if np.ptp(actual) > 0:
        centred = actual - actual.mean()
        r_squared = 1.0 - squared / float(np.sum(centred * centred))
    else:
        logger.warning('Actuals are constant, r squared is undefined')

    # zero actuals fall back to an absolute tolerance of ``band``
    tolerance = np.where(actual == 0, band, band * np.abs(actual))
    within = np.abs(error) <= tolerance

    return Metrics(
        mae=float(np.mean(np.abs(error))),
        rmse=float(np.sqrt(squared / error.size)),
        r_squared=r_squared,
        band_accuracy=float(np.mean(within)),
        band=band,
        n=int(error.size),
    )
