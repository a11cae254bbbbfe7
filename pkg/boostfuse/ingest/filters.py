import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

from boostfuse.errors import ArgumentError
from boostfuse.ingest.matrix import DataMatrix
from boostfuse.schema.record.record import DailyRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonthSplit:
    train: List[DailyRecord]
    test: List[DailyRecord]
    warnings: List[str] = field(default_factory=list)

    def __iter__(self) -> Iterator[List[DailyRecord]]:
        return iter((self.train, self.test))


# Operating days are the ones where the plant produced cooling.
def filter_operating_days(
    records: Sequence[DailyRecord],
) -> List[DailyRecord]:
    kept = [record for record in records if record.system_daily_cooling != 0]
    logger.info(
        'Kept %d of %d records as operating days', len(kept), len(records)
    )
    return kept


def split_by_month(
    records: Sequence[DailyRecord], train_month: int, test_month: int
) -> MonthSplit:
    for month in (train_month, test_month):
        if not 1 <= month <= 12:
            raise ArgumentError(f'Month must be in 1..12, got {month}')
    if train_month == test_month:
        raise ArgumentError('Train and test month must differ')

    train = [r for r in records if r.date.month == train_month]
    test = [r for r in records if r.date.month == test_month]

    warnings = []
    for name, bucket, month in (
        ('train', train, train_month),
        ('test', test, test_month),
    ):
        if not bucket:
            message = f'No records for {name} month {month}'
            logger.warning(message)
            warnings.append(message)

    logger.info('Month split: %d train, %d test', len(train), len(test))
    return MonthSplit(train=train, test=test, warnings=warnings)


def holdout_tail(
    matrix: DataMatrix, fraction: float
) -> Tuple[DataMatrix, DataMatrix]:
    """Hold out the last ``fraction`` of rows by date, row order if undated."""
    if not 0 < fraction < 1:
        raise ArgumentError(f'Holdout fraction must be in (0, 1): {fraction}')
    if matrix.n_rows < 2:
        raise ArgumentError('At least two rows are needed for a holdout')

    dates = matrix.dates
    if dates is not None:
        order = sorted(range(matrix.n_rows), key=dates.__getitem__)
    else:
        order = list(range(matrix.n_rows))
    size = min(max(round(matrix.n_rows * fraction), 1), matrix.n_rows - 1)
    return matrix.take(order[:-size]), matrix.take(order[-size:])
