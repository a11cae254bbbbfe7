from typing import List

import pytest

from tests.const import PLANT_FIXTURES
from tests.synthetic import regression_matrix

from boostfuse.cli.common import read_schema
from boostfuse.ingest.matrix import DataMatrix
from boostfuse.ingest.reader import parse_daily_csv
from boostfuse.schema.record.record import DailyRecord
from conf.config import settings


@pytest.fixture()
def _single_thread(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(settings, 'THREADS', 1)


@pytest.fixture()
def regression() -> DataMatrix:
    return regression_matrix(seed=0)


@pytest.fixture(scope='session')
def plant_records() -> List[DailyRecord]:
    schema = read_schema(PLANT_FIXTURES / 'aliases.env')
    with open(PLANT_FIXTURES / 'plant_daily.csv', 'rb') as source:
        return parse_daily_csv(source, schema)
