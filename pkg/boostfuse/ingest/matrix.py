import datetime as dt
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from boostfuse.errors import ArgumentError, SchemaError
from boostfuse.schema.record.record import DAILY_FIELDS, DailyRecord

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class DataMatrix:
    feature_names: Tuple[str, ...]
    rows: FloatArray
    target_name: str
    target: FloatArray
    dates: Optional[Tuple[dt.date, ...]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        rows = np.array(self.rows, dtype=np.float64)
        target = np.array(self.target, dtype=np.float64)
        if rows.ndim != 2:
            raise ArgumentError('Matrix rows must be two-dimensional')
        n, m = rows.shape
        if n < 1 or m < 1:
            raise ArgumentError(f'Matrix must be at least 1x1, got {n}x{m}')
        if m != len(self.feature_names):
            raise ArgumentError(
                f'{m} columns but {len(self.feature_names)} feature names'
            )
        if len(set(self.feature_names)) != m:
            raise ArgumentError('Feature names must be unique')
        if self.target_name in self.feature_names:
            raise ArgumentError(
                f'Target {self.target_name!r} is also listed as a feature'
            )
        if target.shape != (n,):
            raise ArgumentError(
                f'Target length {target.shape} does not match {n} rows'
            )
        if not (np.isfinite(rows).all() and np.isfinite(target).all()):
            raise ArgumentError('Matrix contains non-finite values')
        if self.dates is not None and len(self.dates) != n:
            raise ArgumentError('One date per row is required')

        rows.setflags(write=False)
        target.setflags(write=False)
        object.__setattr__(self, 'feature_names', tuple(self.feature_names))
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'target', target)

    @property
    def n_rows(self) -> int:
        return int(self.rows.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.rows.shape[1])

    def column(self, name: str) -> FloatArray:
        if name == self.target_name:
            return self.target
        try:
            return self.rows[:, self.feature_names.index(name)]
        except ValueError:
            raise SchemaError(name) from None

    def take(self, indices: Sequence[int]) -> 'DataMatrix':
        idx = np.asarray(indices, dtype=np.intp)
        dates = (
            tuple(self.dates[i] for i in idx)
            if self.dates is not None
            else None
        )
        return DataMatrix(
            feature_names=self.feature_names,
            rows=self.rows[idx],
            target_name=self.target_name,
            target=self.target[idx],
            dates=dates,
        )

    def select(self, feature_names: Sequence[str]) -> 'DataMatrix':
        columns = [self.column(name) for name in feature_names]
        return DataMatrix(
            feature_names=tuple(feature_names),
            rows=np.column_stack(columns),
            target_name=self.target_name,
            target=self.target,
            dates=self.dates,
        )


def available_columns(records: Sequence[DailyRecord]) -> List[str]:
    """Canonical fields followed by extended columns in first-seen order."""
    names = list(DAILY_FIELDS)
    for record in records:
        for name in record.extra:
            if name not in names:
                names.append(name)
    return names


def to_matrix(
    records: Sequence[DailyRecord],
    feature_names: Sequence[str],
    target_name: str,
) -> DataMatrix:
    if target_name in feature_names:
        raise ArgumentError(
            f'Target {target_name!r} is also listed as a feature'
        )
    if not records:
        raise ArgumentError('Cannot build a matrix from zero records')

    for name in (*feature_names, target_name):
        if not all(record.has(name) for record in records):
            raise SchemaError(name)

    rows = np.array(
        [[record.value(name) for name in feature_names] for record in records],
        dtype=np.float64,
    ).reshape(len(records), len(feature_names))
    target = np.array(
        [record.value(target_name) for record in records], dtype=np.float64
    )
    return DataMatrix(
        feature_names=tuple(feature_names),
        rows=rows,
        target_name=target_name,
        target=target,
        dates=tuple(record.date for record in records),
    )
