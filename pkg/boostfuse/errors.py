from datetime import datetime
from typing import Optional, Sequence

USAGE_EXIT_CODE = 1
DATA_EXIT_CODE = 2


class BoostFuseError(Exception):
    exit_code: int = DATA_EXIT_CODE


class UsageError(BoostFuseError):
    exit_code = USAGE_EXIT_CODE


class ArgumentError(BoostFuseError, ValueError):
    exit_code = USAGE_EXIT_CODE


class DataError(BoostFuseError):
    exit_code = DATA_EXIT_CODE


class SchemaError(DataError):
    def __init__(self, column: str, message: Optional[str] = None) -> None:
        self.column = column
        super().__init__(message or f'Missing or unknown column: {column!r}')


class RowError(DataError):
    def __init__(self, line: int, column: str, message: str) -> None:
        self.line = line
        self.column = column
        super().__init__(f'Line {line}, column {column!r}: {message}')


class RecordValidationError(DataError):
    pass


class DuplicateDateError(RecordValidationError):
    def __init__(self, line: int, day: object) -> None:
        self.line = line
        self.day = day
        super().__init__(f'Line {line}: duplicate date {day}')


class MonotonicityError(RecordValidationError):
    def __init__(self, timestamps: Sequence[datetime]) -> None:
        self.timestamps = list(timestamps)
        listed = ', '.join(ts.isoformat(sep=' ') for ts in self.timestamps)
        super().__init__(
            f'Daily cumulative electricity decreases at: {listed}'
        )


class DegenerateSeriesError(DataError):
    pass


class DegenerateTargetError(DataError):
    pass


class EmptySelectionError(DataError):
    pass


class SingularityError(DataError):
    pass


class ModelLoadError(DataError):
    pass


class ModelVersionError(ModelLoadError):
    pass


class MalformedDocumentError(ModelLoadError):
    pass


class TruncatedStreamError(ModelLoadError):
    pass
