from pathlib import Path
from typing import Dict

import pytest

from tests.const import PLANT_FIXTURES

from boostfuse.cli.main import cli_main


@pytest.fixture(scope='module')
def months(tmp_path_factory: pytest.TempPathFactory) -> Dict[str, Path]:
    """Operating days of the plant export, split into March and May."""
    out = tmp_path_factory.mktemp('protocol')
    paths = {
        'days': out / 'days.csv',
        'march': out / 'march.csv',
        'may': out / 'may.csv',
    }
    code = cli_main(
        [
            'ingest',
            '--data',
            str(PLANT_FIXTURES / 'plant_daily.csv'),
            '--aliases',
            str(PLANT_FIXTURES / 'aliases.env'),
            '--filter-operating',
            '--out',
            str(paths['days']),
            '--train-month',
            '3',
            '--test-month',
            '5',
            '--train-out',
            str(paths['march']),
            '--test-out',
            str(paths['may']),
        ]
    )
    assert code == 0
    return paths
