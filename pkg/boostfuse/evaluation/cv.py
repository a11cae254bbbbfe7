import logging
from typing import Callable, List, Optional, Protocol, Tuple

import numpy as np
import numpy.typing as npt

from boostfuse.errors import ArgumentError
from boostfuse.evaluation.metrics import metrics
from boostfuse.ingest.matrix import DataMatrix
from boostfuse.schema.evaluation.metrics import (
    CVResult,
    Metrics,
    MetricSummary,
)
from boostfuse.utils.decorator import measure_latency
from boostfuse.utils.lcg import shuffled_indices
from boostfuse.utils.parallel import ordered_map

logger = logging.getLogger(__name__)


class Predictor(Protocol):
    def predict_batch(
        self, rows: npt.ArrayLike
    ) -> npt.NDArray[np.float64]:  # pragma: no cover
        ...


Trainer = Callable[[DataMatrix], Predictor]


def assign_folds(n: int, k: int, seed: int) -> List[int]:
    """Shuffle rows with the seeded LCG and deal them into k contiguous
    folds; the first ``n % k`` folds get one extra row."""
    if k < 2:
        raise ArgumentError(f'Need at least 2 folds, got {k}')
    if k > n:
        raise ArgumentError(f'{k} folds for only {n} rows')

    order = shuffled_indices(n, seed)
    base, extra = divmod(n, k)
    assignment = [0] * n
    start = 0
    for fold in range(k):
        size = base + (1 if fold < extra else 0)
        for row in order[start : start + size]:
            assignment[row] = fold
        start += size
    return assignment


def _summarise(
    fold_metrics: List[Metrics],
) -> Tuple[MetricSummary, MetricSummary]:
    def stats(values: List[float]) -> Tuple[float, float]:
        array = np.asarray(values, dtype=np.float64)
        # population standard deviation
        return float(array.mean()), float(array.std())

    mae = stats([m.mae for m in fold_metrics])
    rmse = stats([m.rmse for m in fold_metrics])
    band = stats([m.band_accuracy for m in fold_metrics])
    defined = [m.r_squared for m in fold_metrics if m.r_squared is not None]
    r2: Tuple[Optional[float], Optional[float]] = (
        stats(defined) if defined else (None, None)
    )
    return (
        MetricSummary(
            mae=mae[0], rmse=rmse[0], r_squared=r2[0], band_accuracy=band[0]
        ),
        MetricSummary(
            mae=mae[1], rmse=rmse[1], r_squared=r2[1], band_accuracy=band[1]
        ),
    )


@measure_latency(method_name='k_fold_cv', stage='evaluation')
def k_fold_cv(
    matrix: DataMatrix,
    k: int,
    seed: int,
    trainer: Trainer,
    band: float = 0.1,
) -> CVResult:
    assignment = assign_folds(matrix.n_rows, k, seed)
    folds = np.asarray(assignment)

    def run_fold(fold: int) -> Metrics:
        test_rows = np.flatnonzero(folds == fold)
        train_rows = np.flatnonzero(folds != fold)
        model = trainer(matrix.take(train_rows))
        test = matrix.take(test_rows)
        result = metrics(model.predict_batch(test.rows), test.target, band)
        logger.info('Fold %d/%d: MAE %r', fold + 1, k, result.mae)
        return result

    fold_metrics = ordered_map(run_fold, range(k))
    mean, std = _summarise(fold_metrics)
    return CVResult(
        fold_metrics=fold_metrics,
        mean_metrics=mean,
        std_metrics=std,
        fold_assignment=assignment,
        seed=seed,
    )
