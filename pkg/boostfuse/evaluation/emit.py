import datetime as dt
from typing import Any, Dict, Optional, Sequence, TextIO

import numpy as np
import numpy.typing as npt
import orjson
import pandas as pd

from boostfuse.errors import ArgumentError
from boostfuse.schema.evaluation.metrics import (
    ComparisonRow,
    CVResult,
    Metrics,
)

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


def metrics_to_json(
    metrics: Metrics, context: Optional[Dict[str, Any]] = None
) -> bytes:
    document = dict(context or {})
    document.update(metrics.model_dump(mode='json'))
    document['r_squared_defined'] = metrics.r_squared_defined
    return orjson.dumps(document, option=JSON_OPTIONS)


def cv_to_json(result: CVResult) -> bytes:
    document = result.model_dump(mode='json')
    document['fold_sizes'] = [
        size for _, size in sorted(result.fold_sizes().items())
    ]
    return orjson.dumps(document, option=JSON_OPTIONS)


def series_to_csv(
    dates: Optional[Sequence[dt.date]],
    actuals: npt.ArrayLike,
    predictions: npt.ArrayLike,
    sink: TextIO,
) -> None:
    """Actual against predicted per row, ordered by date when known."""
    actual = np.asarray(actuals, dtype=np.float64)
    predicted = np.asarray(predictions, dtype=np.float64)
    if actual.shape != predicted.shape:
        raise ArgumentError('Series length mismatch')
    if dates is None:
        order = list(range(actual.size))
        labels = [str(i) for i in order]
        key = 'row'
    else:
        order = sorted(range(actual.size), key=dates.__getitem__)
        labels = [dates[i].isoformat() for i in order]
        key = 'date'
    frame = pd.DataFrame(
        {
            key: labels,
            'actual': actual[order],
            'predicted': predicted[order],
        }
    )
    frame.to_csv(sink, index=False, lineterminator='\n')


def predictions_to_csv(
    dates: Sequence[dt.date], predictions: npt.ArrayLike, sink: TextIO
) -> None:
    frame = pd.DataFrame(
        {
            'date': [day.isoformat() for day in dates],
            'prediction': np.asarray(predictions, dtype=np.float64),
        }
    )
    frame.to_csv(sink, index=False, lineterminator='\n')


def comparison_table(rows: Sequence[ComparisonRow]) -> pd.DataFrame:
    """Metric rows by model columns: accuracy, memory, time."""
    metric = rows[0].accuracy_metric.value if rows else 'accuracy'
    index = pd.Index(
        [f'accuracy ({metric})', 'peak_memory_bytes', 'train_time_ms'],
        name='metric',
    )
    return pd.DataFrame(
        {
            row.model_name: [
                row.accuracy,
                row.peak_memory_estimate,
                row.train_time,
            ]
            for row in rows
        },
        index=index,
        dtype=object,
    )


def comparison_to_csv(rows: Sequence[ComparisonRow], sink: TextIO) -> None:
    comparison_table(rows).to_csv(sink, lineterminator='\n')


def comparison_rows_to_csv(
    rows: Sequence[ComparisonRow], sink: TextIO
) -> None:
    columns = [
        'model',
        'accuracy_metric',
        'accuracy',
        'mae',
        'rmse',
        'r_squared',
        'band_accuracy',
        'peak_memory_bytes',
        'train_time_ms',
    ]
    frame = pd.DataFrame(
        [
            {
                'model': row.model_name,
                'accuracy_metric': row.accuracy_metric.value,
                'accuracy': row.accuracy,
                'mae': row.metrics.mae,
                'rmse': row.metrics.rmse,
                'r_squared': row.metrics.r_squared,
                'band_accuracy': row.metrics.band_accuracy,
                'peak_memory_bytes': row.peak_memory_estimate,
                'train_time_ms': row.train_time,
            }
            for row in rows
        ],
        columns=columns,
    )
    frame.to_csv(sink, index=False, lineterminator='\n')
