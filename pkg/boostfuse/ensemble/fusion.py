import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np
import numpy.typing as npt

from boostfuse.boosting.exact import train
from boostfuse.boosting.hist import train_hist
from boostfuse.boosting.model import BoostModel
from boostfuse.errors import ArgumentError
from boostfuse.ingest.matrix import DataMatrix
from boostfuse.schema.config.train import LeafWiseConfig, TrainConfig
from boostfuse.schema.model.document import FusionWeights
from boostfuse.utils.decorator import measure_latency
from boostfuse.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class EnsembleModel:
    model_exact: BoostModel
    model_hist: BoostModel
    weights: FusionWeights
    holdout_mae_exact: float
    holdout_mae_hist: float
    target_name: str = 'target'

    def __post_init__(self) -> None:
        if self.model_exact.feature_names != self.model_hist.feature_names:
            raise ArgumentError('Component models disagree on feature names')

    @property
    def feature_names(self) -> tuple[str, ...]:
        return self.model_exact.feature_names

    def predict(self, row: npt.ArrayLike) -> float:
        return predict_ensemble(self, row)

    def predict_batch(self, rows: npt.ArrayLike) -> FloatArray:
        return predict_ensemble_batch(self, rows)

    @property
    def nbytes(self) -> int:
        return self.model_exact.nbytes + self.model_hist.nbytes


def compute_mae(predictions: npt.ArrayLike, actuals: npt.ArrayLike) -> float:
    predicted = np.asarray(predictions, dtype=np.float64)
    actual = np.asarray(actuals, dtype=np.float64)
    if predicted.shape != actual.shape or predicted.ndim != 1:
        raise ArgumentError(
            f'Length mismatch: {predicted.shape} vs {actual.shape}'
        )
    if predicted.size == 0:
        raise ArgumentError('MAE of an empty vector is undefined')
    return float(np.mean(np.abs(predicted - actual)))


def fuse_weights(mae_exact: float, mae_hist: float) -> FusionWeights:
    """Inverse-MAE fusion: each model is weighted by the other's error."""
    if mae_exact < 0 or mae_hist < 0:
        raise ArgumentError('MAE must be non-negative')

    total = mae_exact + mae_hist
    if total == 0:
        w_exact = 0.5
    else:
        w_exact = mae_hist / total
    return FusionWeights(w_exact=w_exact, w_hist=1.0 - w_exact)


def predict_ensemble(model: EnsembleModel, row: npt.ArrayLike) -> float:
    return (
        model.weights.w_exact * model.model_exact.predict(row)
        + model.weights.w_hist * model.model_hist.predict(row)
    )


def predict_ensemble_batch(
    model: EnsembleModel, rows: npt.ArrayLike
) -> FloatArray:
    return (
        model.weights.w_exact * model.model_exact.predict_batch(rows)
        + model.weights.w_hist * model.model_hist.predict_batch(rows)
    )


@measure_latency(method_name='train_ensemble', stage='ensemble')
def train_ensemble(
    train_matrix: DataMatrix,
    holdout: DataMatrix,
    config_exact: Optional[TrainConfig] = None,
    config_hist: Optional[LeafWiseConfig] = None,
) -> EnsembleModel:
    if (
        train_matrix.feature_names != holdout.feature_names
        or train_matrix.target_name != holdout.target_name
    ):
        raise ArgumentError('Train and holdout columns differ')

    fits: List[Callable[[], BoostModel]] = [
        lambda: train(train_matrix, config_exact),
        lambda: train_hist(train_matrix, config_hist),
    ]
    model_exact, model_hist = ordered_map(lambda fit: fit(), fits)

    mae_exact = compute_mae(
        model_exact.predict_batch(holdout.rows), holdout.target
    )
    mae_hist = compute_mae(
        model_hist.predict_batch(holdout.rows), holdout.target
    )
    weights = fuse_weights(mae_exact, mae_hist)
    logger.info(
        'Holdout MAE exact=%r hist=%r -> weights exact=%r hist=%r',
        mae_exact,
        mae_hist,
        weights.w_exact,
        weights.w_hist,
    )
    return EnsembleModel(
        model_exact=model_exact,
        model_hist=model_hist,
        weights=weights,
        holdout_mae_exact=mae_exact,
        holdout_mae_hist=mae_hist,
        target_name=train_matrix.target_name,
    )
