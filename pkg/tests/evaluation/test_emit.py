import datetime as dt
import io

import orjson
import pytest

from boostfuse.errors import ArgumentError
from boostfuse.evaluation.emit import (
    comparison_rows_to_csv,
    comparison_table,
    comparison_to_csv,
    cv_to_json,
    metrics_to_json,
    predictions_to_csv,
    series_to_csv,
)
from boostfuse.evaluation.metrics import metrics
from boostfuse.schema.evaluation.metrics import (
    AccuracyMetric,
    ComparisonRow,
    CVResult,
    MetricSummary,
)

DAYS = [dt.date(2023, 5, 3), dt.date(2023, 5, 1), dt.date(2023, 5, 2)]


def row(name: str, accuracy: float, memory: int, time: float) -> ComparisonRow:
    result = metrics([1.0, 2.0], [1.0, 3.0])
    return ComparisonRow(
        model_name=name,
        accuracy_metric=AccuracyMetric.r_squared,
        accuracy=accuracy,
        peak_memory_estimate=memory,
        train_time=time,
        metrics=result,
    )


def test_metrics_document_flags_r_squared() -> None:
    document = orjson.loads(
        metrics_to_json(metrics([1.0, 3.0], [2.0, 2.0]), {'learner': 'hist'})
    )

    assert document['learner'] == 'hist'
    assert document['r_squared'] is None
    assert document['r_squared_defined'] is False
    assert document['mae'] == 1.0


def test_cv_document_lists_fold_sizes() -> None:
    summary = MetricSummary(mae=1.0, rmse=1.0, band_accuracy=0.5)
    result = CVResult(
        fold_metrics=[metrics([1.0], [2.0]), metrics([2.0, 2.0], [2.0, 3.0])],
        mean_metrics=summary,
        std_metrics=summary,
        fold_assignment=[1, 0, 1],
        seed=4,
    )

    document = orjson.loads(cv_to_json(result))

    assert document['fold_sizes'] == [1, 2]
    assert document['seed'] == 4
    assert len(document['fold_metrics']) == 2


def test_series_is_ordered_by_date() -> None:
    sink = io.StringIO()
    series_to_csv(DAYS, [3.0, 1.0, 2.0], [3.5, 1.5, 2.5], sink)

    assert sink.getvalue().splitlines() == [
        'date,actual,predicted',
        '2023-05-01,1.0,1.5',
        '2023-05-02,2.0,2.5',
        '2023-05-03,3.0,3.5',
    ]


def test_undated_series_uses_row_numbers() -> None:
    sink = io.StringIO()
    series_to_csv(None, [3.0, 1.0], [2.0, 2.0], sink)

    assert sink.getvalue().splitlines() == [
        'row,actual,predicted',
        '0,3.0,2.0',
        '1,1.0,2.0',
    ]


def test_series_length_mismatch() -> None:
    with pytest.raises(ArgumentError):
        series_to_csv(None, [1.0], [1.0, 2.0], io.StringIO())


def test_predictions_keep_input_order() -> None:
    sink = io.StringIO()
    predictions_to_csv(DAYS, [3.0, 1.0, 2.0], sink)

    assert sink.getvalue().splitlines()[:2] == [
        'date,prediction',
        '2023-05-03,3.0',
    ]


def test_comparison_table_layout() -> None:
    rows = [
        row('exact', 0.84, 4096, 45.2),
        row('hist', 0.85, 822, 4.7),
        row('ensemble', 0.86, 4918, 50.1),
    ]

    table = comparison_table(rows)

    assert list(table.columns) == ['exact', 'hist', 'ensemble']
    assert list(table.index) == [
        'accuracy (r_squared)',
        'peak_memory_bytes',
        'train_time_ms',
    ]
    assert table.loc['peak_memory_bytes', 'hist'] == 822

    sink = io.StringIO()
    comparison_to_csv(rows, sink)
    assert sink.getvalue().splitlines() == [
        'metric,exact,hist,ensemble',
        'accuracy (r_squared),0.84,0.85,0.86',
        'peak_memory_bytes,4096,822,4918',
        'train_time_ms,45.2,4.7,50.1',
    ]


def test_comparison_rows() -> None:
    sink = io.StringIO()
    comparison_rows_to_csv([row('exact', 0.5, 10, 1.5)], sink)

    header, line = sink.getvalue().splitlines()
    assert header == (
        'model,accuracy_metric,accuracy,mae,rmse,r_squared,band_accuracy,'
        'peak_memory_bytes,train_time_ms'
    )
    assert line.startswith('exact,r_squared,0.5,0.5,')
    assert line.endswith(',10,1.5')
