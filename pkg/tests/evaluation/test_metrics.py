import logging

import pytest

from boostfuse.errors import ArgumentError
from boostfuse.evaluation.metrics import metrics
from boostfuse.schema.evaluation.metrics import AccuracyMetric


def test_perfect_predictions() -> None:
    result = metrics([1.0, 2.0, 4.0], [1.0, 2.0, 4.0])

    assert (result.mae, result.rmse) == (0.0, 0.0)
    assert result.r_squared == 1.0
    assert result.band_accuracy == 1.0
    assert result.n == 3


def test_constant_actuals_flag_r_squared(
    caplog: pytest.LogCaptureFixture,
) -> None:
    with caplog.at_level(logging.WARNING):
        result = metrics([1.0, 3.0], [2.0, 2.0])

    assert (result.mae, result.rmse) == (1.0, 1.0)
    assert result.r_squared is None
    assert not result.r_squared_defined
    assert result.accuracy(AccuracyMetric.r_squared) is None
    assert 'constant' in caplog.text


def test_hand_computed_r_squared() -> None:
    result = metrics([2.0, 4.0], [1.0, 5.0])

    assert (result.mae, result.rmse) == (1.0, 1.0)
    assert result.r_squared == 0.75


def test_mean_predictor_scores_zero() -> None:
    result = metrics([3.0, 3.0, 3.0], [1.0, 3.0, 5.0])

    assert result.r_squared == 0.0


@pytest.mark.parametrize(
    ('predictions', 'actuals', 'band', 'accuracy'),
    [
        ([105.0, 89.0], [100.0, 100.0], 0.1, 0.5),
        ([110.0, 90.0], [100.0, 100.0], 0.1, 1.0),
        ([0.05, 0.5], [0.0, 0.0], 0.1, 0.5),
        ([-9.5, 2.0], [-10.0, 1.0], 0.1, 0.5),
        ([105.0, 89.0], [100.0, 100.0], 0.2, 1.0),
    ],
)
def test_band_accuracy(
    predictions: list[float],
    actuals: list[float],
    band: float,
    accuracy: float,
) -> None:
    result = metrics(predictions, actuals, band)

    assert result.band_accuracy == accuracy
    assert result.accuracy(AccuracyMetric.band_accuracy) == accuracy


@pytest.mark.parametrize(
    ('predictions', 'actuals', 'band'),
    [
        ([], [], 0.1),
        ([1.0], [1.0, 2.0], 0.1),
        ([1.0], [1.0], 0.0),
    ],
)
def test_invalid_arguments(
    predictions: list[float], actuals: list[float], band: float
) -> None:
    with pytest.raises(ArgumentError):
        metrics(predictions, actuals, band)
