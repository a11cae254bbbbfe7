import io
from pathlib import Path
from typing import Dict, List

import orjson
import pandas as pd
import pytest

from tests.const import PLANT_FIXTURES

from boostfuse.cli.main import cli_main
from boostfuse.ingest.reader import parse_daily_csv
from boostfuse.schema.record.record import DailyRecord
from conf.config import settings

FEATURES = (
    'host_daily_power,chiller_pump_daily_power,room_daily_electricity,'
    'outdoor_temperature'
)


def records(path: Path) -> List[DailyRecord]:
    with open(path, 'rb') as source:
        return parse_daily_csv(source)


def train_model(
    months: Dict[str, Path], out: Path, *flags: str
) -> bytes:
    code = cli_main(
        [
            'train',
            '--train',
            str(months['march']),
            '--features',
            FEATURES,
            '--out',
            str(out),
            *flags,
        ]
    )
    assert code == 0
    return out.read_bytes()


def test_ingest_keeps_operating_days_by_month(
    months: Dict[str, Path],
) -> None:
    march, may = records(months['march']), records(months['may'])

    assert len(march) == 29
    assert len(may) == 29
    assert {record.date.month for record in march} == {3}
    assert {record.date.month for record in may} == {5}
    assert all(record.system_daily_cooling > 0 for record in march + may)
    assert len(records(months['days'])) == 85
    assert march[0].has('outdoor_temperature')


def test_minutely_ingest(tmp_path: Path) -> None:
    out = tmp_path / 'daily.csv'

    code = cli_main(
        [
            'ingest',
            '--minutely',
            '--data',
            str(PLANT_FIXTURES / 'plant_minutely.csv'),
            '--out',
            str(out),
        ]
    )

    assert code == 0
    frame = pd.read_csv(out)
    assert len(frame) == 2
    assert 'room_daily_electricity' in frame.columns


def test_analyze_ranks_nine_features(
    months: Dict[str, Path], tmp_path: Path
) -> None:
    out, report = tmp_path / 'features.csv', tmp_path / 'report.json'

    code = cli_main(
        [
            'analyze',
            '--data',
            str(months['march']),
            '--top',
            '9',
            '--out',
            str(out),
            '--json-out',
            str(report),
        ]
    )

    assert code == 0
    frame = pd.read_csv(out)
    assert len(frame) == 9
    assert list(frame.columns) == ['feature', 'r', 'strength', 'flags']
    assert 'system_daily_cooling' not in set(frame['feature'])
    assert orjson.loads(report.read_bytes())['target'] == (
        'system_daily_cooling'
    )


def test_train_then_evaluate(
    months: Dict[str, Path], tmp_path: Path
) -> None:
    model = tmp_path / 'model.json'
    metrics_out, series_out = tmp_path / 'metrics.json', tmp_path / 's.csv'
    document = orjson.loads(train_model(months, model))

    code = cli_main(
        [
            'evaluate',
            '--model',
            str(model),
            '--data',
            str(months['may']),
            '--metrics-out',
            str(metrics_out),
            '--series-out',
            str(series_out),
        ]
    )

    assert code == 0
    assert document['learner'] == 'ensemble'
    assert document['feature_names'] == FEATURES.split(',')
    assert sum(document['weights'].values()) == pytest.approx(1.0)
    result = orjson.loads(metrics_out.read_bytes())
    assert result['learner'] == 'ensemble'
    assert result['n'] == 29
    assert result['r_squared_defined'] is True
    series = pd.read_csv(series_out)
    assert list(series.columns) == ['date', 'actual', 'predicted']
    assert series['date'].is_monotonic_increasing


def test_explicit_holdout(months: Dict[str, Path], tmp_path: Path) -> None:
    document = orjson.loads(
        train_model(
            months, tmp_path / 'm.json', '--holdout', str(months['may'])
        )
    )

    assert document['holdout_mae_exact'] >= 0


@pytest.mark.parametrize('learner', ['exact', 'hist'])
def test_single_learner_and_predict(
    months: Dict[str, Path], tmp_path: Path, learner: str
) -> None:
    model, out = tmp_path / 'model.json', tmp_path / 'predictions.csv'
    train_model(months, model, '--learner', learner)

    code = cli_main(
        [
            'predict',
            '--model',
            str(model),
            '--data',
            str(months['may']),
            '--out',
            str(out),
        ]
    )

    assert code == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == ['date', 'prediction']
    assert len(frame) == 29


def test_cross_validation(
    months: Dict[str, Path], capsys: pytest.CaptureFixture[str]
) -> None:
    code = cli_main(
        [
            'cv',
            '--data',
            str(months['march']),
            '--features',
            FEATURES,
            '--learner',
            'exact',
            '--folds',
            '3',
            '--seed',
            '4',
        ]
    )

    assert code == 0
    document = orjson.loads(capsys.readouterr().out)
    assert document['fold_sizes'] == [10, 10, 9]
    assert document['seed'] == 4


def test_compare_layout(months: Dict[str, Path], tmp_path: Path) -> None:
    out, rows_out = tmp_path / 'comparison.csv', tmp_path / 'rows.csv'

    code = cli_main(
        [
            'compare',
            '--train',
            str(months['march']),
            '--test',
            str(months['may']),
            '--features',
            FEATURES,
            '--accuracy-metric',
            'band_accuracy',
            '--out',
            str(out),
            '--rows-out',
            str(rows_out),
        ]
    )

    assert code == 0
    table = pd.read_csv(out, index_col='metric')
    assert list(table.columns) == ['exact', 'hist', 'ensemble']
    assert list(table.index) == [
        'accuracy (band_accuracy)',
        'peak_memory_bytes',
        'train_time_ms',
    ]
    assert len(pd.read_csv(rows_out)) == 3


def test_config_file_sets_defaults_and_flags_win(
    months: Dict[str, Path], tmp_path: Path
) -> None:
    config = PLANT_FIXTURES / 'train.env'

    from_file = orjson.loads(
        train_model(months, tmp_path / 'a.json', '--config', str(config))
    )
    overridden = orjson.loads(
        train_model(
            months,
            tmp_path / 'b.json',
            '--config',
            str(config),
            '--num-trees',
            '2',
        )
    )

    assert [len(m['trees']) for m in from_file['models']] == [7, 7]
    assert [len(m['trees']) for m in overridden['models']] == [2, 2]


def test_boolean_config_keys(
    months: Dict[str, Path], tmp_path: Path
) -> None:
    config = tmp_path / 'train.env'
    config.write_text('zero-base-score=yes\nlearner=exact\n')

    document = orjson.loads(
        train_model(months, tmp_path / 'm.json', '--config', str(config))
    )

    assert document['learner'] == 'exact'
    assert document['models'][0]['base_score'] == 0.0


def test_thread_count_does_not_change_model_bytes(
    months: Dict[str, Path],
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    documents = []
    for threads in (1, 4):
        monkeypatch.setattr(settings, 'THREADS', threads)
        documents.append(train_model(months, tmp_path / f'{threads}.json'))

    assert documents[0] == documents[1]


def test_stdout_when_no_output_path(
    months: Dict[str, Path], capsys: pytest.CaptureFixture[str]
) -> None:
    code = cli_main(['analyze', '--data', str(months['march']), '--top', '3'])

    assert code == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert len(frame) == 3
