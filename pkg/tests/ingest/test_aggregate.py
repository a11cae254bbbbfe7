import datetime as dt
from pathlib import Path

import pytest

from boostfuse.errors import (
    ArgumentError,
    MonotonicityError,
    RecordValidationError,
)
from boostfuse.ingest.aggregate import aggregate_days, aggregate_minutely
from boostfuse.ingest.reader import parse_minutely_csv
from boostfuse.schema.record.record import MinutelyRecord

BASE_DIR = Path(__file__).parent
FIXTURES_PATH = BASE_DIR / 'fixtures'

DAY = dt.date(2021, 3, 17)


def minute(
    hour: int, minute_: int, power: float, cumulative: float
) -> MinutelyRecord:
    return MinutelyRecord(
        timestamp=dt.datetime.combine(DAY, dt.time(hour, minute_, 1)),
        instantaneous_active_power=power,
        daily_cumulative_electricity=cumulative,
        yearly_cumulative_electricity=365849.2,
        yearly_mean_cop=7.1,
    )


@pytest.fixture()
def table1() -> list[MinutelyRecord]:
    with open(FIXTURES_PATH / 'table1.csv', 'rb') as source:
        return parse_minutely_csv(source)


def test_table1_collapses_to_last_cumulative_reading(
    table1: list[MinutelyRecord],
) -> None:
    daily = aggregate_minutely(table1, DAY)

    assert daily.date == DAY
    assert daily.room_daily_electricity == 231.6
    assert daily.host_daily_power == pytest.approx(
        (11.7 + 54.2 + 60.8 + 44.8 + 44.1 + 45.7 + 45) / 7 * 1000, rel=1e-12
    )
    assert daily.system_daily_cooling is None


def test_result_does_not_depend_on_input_order(
    table1: list[MinutelyRecord],
) -> None:
    assert aggregate_minutely(table1[::-1], DAY) == aggregate_minutely(
        table1, DAY
    )


def test_single_record_gives_its_cumulative_value() -> None:
    daily = aggregate_minutely([minute(14, 12, 11.7, 224.6)], DAY)

    assert daily.room_daily_electricity == 224.6
    # kW reading, W daily field
    assert daily.host_daily_power == pytest.approx(11700.0)


def test_decreasing_cumulative_reading() -> None:
    records = [
        minute(14, 16, 44.1, 229.3),
        minute(14, 17, 45.7, 230.6),
        minute(14, 18, 45.0, 229.0),
    ]

    with pytest.raises(MonotonicityError) as error:
        aggregate_minutely(records, DAY)

    assert error.value.timestamps == [records[2].timestamp]


def test_records_of_another_day() -> None:
    with pytest.raises(RecordValidationError):
        aggregate_minutely([minute(14, 12, 11.7, 224.6)], dt.date(2021, 3, 18))


def test_no_records() -> None:
    with pytest.raises(ArgumentError):
        aggregate_minutely([], DAY)


def test_days_are_grouped_and_ordered(table1: list[MinutelyRecord]) -> None:
    next_day = MinutelyRecord(
        timestamp=dt.datetime(2021, 3, 18, 0, 1),
        instantaneous_active_power=10.0,
        daily_cumulative_electricity=0.2,
        yearly_cumulative_electricity=365849.4,
        yearly_mean_cop=7.1,
    )

    daily = aggregate_days([next_day, *table1])

    assert [record.date for record in daily] == [DAY, dt.date(2021, 3, 18)]
    assert daily[1].room_daily_electricity == 0.2
