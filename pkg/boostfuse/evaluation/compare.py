import logging
import time
from typing import List, Optional, Sequence, Tuple

from boostfuse.boosting.exact import train
from boostfuse.boosting.hist import train_hist
from boostfuse.ensemble.fusion import train_ensemble
from boostfuse.errors import ArgumentError
from boostfuse.evaluation.cv import Predictor, Trainer
from boostfuse.evaluation.metrics import metrics
from boostfuse.ingest.filters import holdout_tail
from boostfuse.ingest.matrix import DataMatrix
from boostfuse.schema.config.train import LeafWiseConfig, TrainConfig
from boostfuse.schema.evaluation.metrics import (
    AccuracyMetric,
    ComparisonRow,
)
from boostfuse.schema.model.document import Learner
from boostfuse.utils.decorator import measure_latency
from boostfuse.utils.memory import allocation_scope
from conf.config import settings

logger = logging.getLogger(__name__)

Entry = Tuple[str, Trainer]


def ensemble_trainer(
    config_exact: Optional[TrainConfig] = None,
    config_hist: Optional[LeafWiseConfig] = None,
    holdout_fraction: Optional[float] = None,
) -> Trainer:
    """Fused learner trained on the date-ordered head of the data and
    weighted on its tail."""
    fraction = holdout_fraction or settings.HOLDOUT_FRACTION

    def fit(matrix: DataMatrix) -> Predictor:
        fit_part, holdout = holdout_tail(matrix, fraction)
        return train_ensemble(fit_part, holdout, config_exact, config_hist)

    return fit


def make_trainer(
    learner: Learner,
    config_exact: Optional[TrainConfig] = None,
    config_hist: Optional[LeafWiseConfig] = None,
    holdout_fraction: Optional[float] = None,
) -> Trainer:
    if learner is Learner.exact:
        return lambda matrix: train(matrix, config_exact)
    if learner is Learner.hist:
        return lambda matrix: train_hist(matrix, config_hist)
    return ensemble_trainer(config_exact, config_hist, holdout_fraction)


def fit_on_head(trainer: Trainer, fraction: float) -> Trainer:
    """Fit ``trainer`` on the date-ordered head a fused learner fits on."""

    def fit(matrix: DataMatrix) -> Predictor:
        return trainer(holdout_tail(matrix, fraction)[0])

    return fit


def default_entries(
    config_exact: Optional[TrainConfig] = None,
    config_hist: Optional[LeafWiseConfig] = None,
    holdout_fraction: Optional[float] = None,
) -> List[Entry]:
    """Exact, histogram and fused learners, the three table columns.

    All three fit on the same head of the training rows. Training is
    deterministic, so the fused column combines exactly the two models
    scored in the other columns.
    """
    fraction = holdout_fraction or settings.HOLDOUT_FRACTION
    return [
        (
            Learner.exact.value,
            fit_on_head(make_trainer(Learner.exact, config_exact), fraction),
        ),
        (
            Learner.hist.value,
            fit_on_head(
                make_trainer(Learner.hist, config_hist=config_hist), fraction
            ),
        ),
        (
            Learner.ensemble.value,
            ensemble_trainer(config_exact, config_hist, fraction),
        ),
    ]


@measure_latency(method_name='compare_models', stage='evaluation')
def compare_models(
    entries: Sequence[Entry],
    train_matrix: DataMatrix,
    test_matrix: DataMatrix,
    band: float = 0.1,
    accuracy_metric: AccuracyMetric = AccuracyMetric.r_squared,
) -> List[ComparisonRow]:
    if not entries:
        raise ArgumentError('Nothing to compare')
    if train_matrix.feature_names != test_matrix.feature_names:
        raise ArgumentError('Train and test columns differ')

    rows: List[ComparisonRow] = []
    # sequential: allocation scopes and timings must not overlap
    for name, trainer in entries:
        with allocation_scope() as counter:
            start = time.perf_counter()
            model = trainer(train_matrix)
            elapsed_ms = (time.perf_counter() - start) * 1000.0
        result = metrics(
            model.predict_batch(test_matrix.rows), test_matrix.target, band
        )
        row = ComparisonRow(
            model_name=name,
            accuracy_metric=accuracy_metric,
            accuracy=result.accuracy(accuracy_metric),
            peak_memory_estimate=counter.peak,
            train_time=elapsed_ms,
            metrics=result,
        )
        logger.info(
            '%s: %s %r, peak %d bytes, %.1f ms',
            name,
            accuracy_metric.value,
            row.accuracy,
            row.peak_memory_estimate,
            row.train_time,
        )
        rows.append(row)
    return rows
