import datetime as dt
import io
import logging
import math
import re
import warnings
from typing import (
    IO,
    Any,
    Callable,
    Dict,
    List,
    Optional,
    Sequence,
    TextIO,
    TypeVar,
    Union,
)

import pandas as pd
from pydantic import BaseModel, ValidationError

from boostfuse.errors import (
    DuplicateDateError,
    RowError,
    SchemaError,
)
from boostfuse.schema.record.record import (
    DAILY_FIELDS,
    MINUTELY_FIELDS,
    ColumnSchema,
    DailyRecord,
    MinutelyRecord,
    PartialDailyRecord,
)

logger = logging.getLogger(__name__)

ISO_DATE = re.compile(r'^\d{4}-\d{2}-\d{2}$')
ISO_TIMESTAMP = re.compile(r'^\d{4}-\d{2}-\d{2}[ T]\d{1,2}:\d{2}(:\d{2})?$')
FIELD_COUNT = re.compile(r'Expected (\d+) fields in line (\d+), saw (\d+)')

# header row is line 1
FIRST_DATA_LINE = 2

RecordT = TypeVar('RecordT', bound=BaseModel)


class _DropRow(Exception):
    pass


def _decode(source: IO[bytes]) -> str:
    data = source.read()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as exc:
        line = data.count(b'\n', 0, exc.start) + 1
        raise RowError(
            line, '<row>', f'not UTF-8: byte 0x{data[exc.start]:02x}'
        ) from None
    return text.removeprefix('\ufeff')


def _read_frame(source: IO[bytes]) -> pd.DataFrame:
    try:
        with warnings.catch_warnings():
            # pandas only warns when a leading row is wider than the header
            warnings.simplefilter('error', pd.errors.ParserWarning)
            frame = pd.read_csv(
                io.StringIO(_decode(source)),
                dtype=str,
                keep_default_na=False,
                skipinitialspace=True,
                index_col=False,
            )
    except pd.errors.EmptyDataError:
        raise SchemaError('<header>', 'Source has no header row') from None
    except pd.errors.ParserWarning:
        raise RowError(
            FIRST_DATA_LINE, '<row>', 'more fields than the header'
        ) from None
    except pd.errors.ParserError as exc:
        match = FIELD_COUNT.search(str(exc))
        if match is None:
            raise SchemaError('<header>', f'Malformed CSV: {exc}') from None
        expected, line, saw = match.groups()
        raise RowError(
            int(line), '<row>', f'expected {expected} fields, saw {saw}'
        ) from None
    frame.columns = [str(column).strip() for column in frame.columns]
    # short rows are padded with NaN
    return frame.fillna('')


def _parse_float(cell: str, line: int, column: str, lenient: bool) -> float:
    text = cell.strip()
    if not text:
        if lenient:
            raise _DropRow(f'missing value in {column!r}')
        raise RowError(line, column, 'missing value')
    try:
        value = float(text)
    except ValueError:
        raise RowError(line, column, f'not a number: {text!r}') from None
    if not math.isfinite(value):
        if lenient:
            raise _DropRow(f'non-finite value in {column!r}')
        raise RowError(line, column, f'non-finite value: {text!r}')
    return value


def _parse_date(cell: str, line: int, column: str) -> dt.date:
    text = cell.strip()
    if not ISO_DATE.match(text):
        raise RowError(line, column, f'not an ISO date: {text!r}')
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise RowError(line, column, f'not an ISO date: {text!r}') from None


def _parse_timestamp(cell: str, line: int, column: str) -> dt.datetime:
    text = cell.strip()
    if not ISO_TIMESTAMP.match(text):
        raise RowError(line, column, f'not an ISO timestamp: {text!r}')
    try:
        return dt.datetime.fromisoformat(text)
    except ValueError:
        raise RowError(line, column, f'bad timestamp: {text!r}') from None


def _validate(
    model: type[RecordT], payload: Dict[str, Any], line: int
) -> RecordT:
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        error = exc.errors()[0]
        column = '.'.join(str(part) for part in error['loc'])
        raise RowError(line, column, error['msg']) from None


def _parse_rows(
    frame: pd.DataFrame,
    build: Callable[[Dict[str, str], int], RecordT],
) -> List[RecordT]:
    records = []
    for position, row in enumerate(frame.to_dict(orient='records')):
        line = position + FIRST_DATA_LINE
        try:
            records.append(build(row, line))
        except _DropRow as reason:
            logger.warning('Dropping line %d: %s', line, reason)
    return records


def parse_daily_csv(
    source: IO[bytes],
    schema: Optional[ColumnSchema] = None,
    lenient: bool = False,
) -> List[DailyRecord]:
    schema = schema or ColumnSchema()
    frame = _read_frame(source)

    headers = {name: schema.header_for(name) for name in DAILY_FIELDS}
    for column in (schema.date_column, *headers.values()):
        if column not in frame.columns:
            raise SchemaError(column)

    renamed = {
        header: name for name, header in schema.extended_aliases().items()
    }
    known = {schema.date_column, *headers.values()}
    extended = {
        column: renamed.get(column, column)
        for column in frame.columns
        if column not in known
    }

    seen: Dict[dt.date, int] = {}

    def build(row: Dict[str, str], line: int) -> DailyRecord:
        day = _parse_date(row[schema.date_column], line, schema.date_column)
        payload: Dict[str, Any] = {
            name: _parse_float(row[header], line, header, lenient)
            for name, header in headers.items()
        }
        payload['extra'] = {
            name: _parse_float(row[column], line, column, lenient)
            for column, name in extended.items()
        }
        payload['date'] = day
        record = _validate(DailyRecord, payload, line)
        if day in seen:
            raise DuplicateDateError(line, day)
        seen[day] = line
        return record

    records = _parse_rows(frame, build)
    logger.info('Parsed %d daily records', len(records))
    return records


def parse_minutely_csv(
    source: IO[bytes], lenient: bool = False
) -> List[MinutelyRecord]:
    frame = _read_frame(source)
    for column in ('timestamp', *MINUTELY_FIELDS):
        if column not in frame.columns:
            raise SchemaError(column)

    def build(row: Dict[str, str], line: int) -> MinutelyRecord:
        payload: Dict[str, Any] = {
            name: _parse_float(row[name], line, name, lenient)
            for name in MINUTELY_FIELDS
        }
        payload['timestamp'] = _parse_timestamp(
            row['timestamp'], line, 'timestamp'
        )
        return _validate(MinutelyRecord, payload, line)

    records = _parse_rows(frame, build)
    logger.info('Parsed %d minutely records', len(records))
    return records


def write_daily_csv(
    records: Sequence[Union[DailyRecord, PartialDailyRecord]],
    sink: TextIO,
) -> None:
    """Canonical CSV: date, canonical fields, then extended columns.

    Canonical fields absent from every record (partial daily records built
    from gateway minutes) are left out.
    """
    columns = [
        name
        for name in DAILY_FIELDS
        if any(getattr(record, name) is not None for record in records)
    ]
    if not records:
        columns = list(DAILY_FIELDS)
    extended: List[str] = []
    for record in records:
        extended.extend(name for name in record.extra if name not in extended)

    frame = pd.DataFrame(
        [
            {
                'date': record.date.isoformat(),
                **{name: getattr(record, name) for name in columns},
                **record.extra,
            }
            for record in records
        ],
        columns=['date', *columns, *extended],
    )
    frame.to_csv(sink, index=False, lineterminator='\n')
