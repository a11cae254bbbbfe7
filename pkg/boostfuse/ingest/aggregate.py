import datetime as dt
import logging
from itertools import groupby
from typing import List, Sequence

import numpy as np

from boostfuse.errors import (
    ArgumentError,
    MonotonicityError,
    RecordValidationError,
)
from boostfuse.schema.record.record import MinutelyRecord, PartialDailyRecord

logger = logging.getLogger(__name__)

WATTS_PER_KILOWATT = 1000.0


def aggregate_minutely(
    records: Sequence[MinutelyRecord], day: dt.date
) -> PartialDailyRecord:
    """Collapse one day of gateway readings into a daily record.

    Daily electricity is the last cumulative reading of the day. The mean
    of the instantaneous active power readings, which the gateway reports
    in kW, becomes the host daily power in W.
    """
    if not records:
        raise ArgumentError(f'No minutely records for {day}')

    foreign = sorted(
        {r.timestamp.date() for r in records if r.timestamp.date() != day}
    )
    if foreign:
        raise RecordValidationError(
            f'Records for {day} also span {", ".join(map(str, foreign))}'
        )

    ordered = sorted(records, key=lambda record: record.timestamp)
    decreasing = [
        current.timestamp
        for previous, current in zip(ordered, ordered[1:])
        if current.daily_cumulative_electricity
        < previous.daily_cumulative_electricity
    ]
    if decreasing:
        raise MonotonicityError(decreasing)

    power = np.fromiter(
        (record.instantaneous_active_power for record in ordered),
        dtype=np.float64,
        count=len(ordered),
    )
    return PartialDailyRecord(
        date=day,
        host_daily_power=float(power.mean()) * WATTS_PER_KILOWATT,
        room_daily_electricity=ordered[-1].daily_cumulative_electricity,
    )


def aggregate_days(
    records: Sequence[MinutelyRecord],
) -> List[PartialDailyRecord]:
    ordered = sorted(records, key=lambda record: record.timestamp)
    daily = [
        aggregate_minutely(list(group), day)
        for day, group in groupby(
            ordered, key=lambda record: record.timestamp.date()
        )
    ]
    logger.info(
        'Aggregated %d minutely records into %d days', len(records), len(daily)
    )
    return daily
