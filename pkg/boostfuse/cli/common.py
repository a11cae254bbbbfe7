import argparse
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import (
    IO,
    Any,
    Callable,
    Dict,
    Iterator,
    List,
    Optional,
    Sequence,
    TextIO,
    Tuple,
)

import numpy as np
import numpy.typing as npt
from dotenv import dotenv_values
from pydantic import ValidationError

from boostfuse.errors import SchemaError, UsageError
from boostfuse.features.report import (
    correlate_with_target,
    second_order_analysis,
    select_features,
)
from boostfuse.ingest.matrix import available_columns, to_matrix
from boostfuse.ingest.reader import parse_daily_csv
from boostfuse.schema.config.train import LeafWiseConfig, TrainConfig
from boostfuse.schema.record.record import ColumnSchema, DailyRecord

logger = logging.getLogger(__name__)

DEFAULT_TARGET = 'system_daily_cooling'
DEFAULT_TOP = 9

_TRUE = {'1', 'true', 'yes', 'on'}
_FALSE = {'0', 'false', 'no', 'off'}


def parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise UsageError(f'Not a boolean: {value!r}')


def optional_int(value: str) -> Optional[int]:
    if value.strip().lower() in {'none', 'unlimited'}:
        return None
    return int(value)


def name_list(value: str) -> List[str]:
    names = [name.strip() for name in value.split(',') if name.strip()]
    if not names:
        raise argparse.ArgumentTypeError('expected a comma separated list')
    return names


# flag type and help for every TrainConfig / LeafWiseConfig field
HYPERPARAMETERS: Dict[str, Tuple[Callable[[str], Any], str]] = {
    'num_trees': (int, 'boosting rounds'),
    'learning_rate': (float, 'shrinkage applied to every tree'),
    'l2_penalty': (float, 'L2 penalty on leaf weights'),
    'leaf_penalty': (float, 'penalty per leaf, minimum split gain'),
    'max_depth': (optional_int, 'depth cap, "none" for unlimited'),
    'min_samples_leaf': (int, 'minimum rows on each side of a split'),
    'seed': (int, 'seed; also drives the cross-validation shuffle'),
    'max_leaves': (int, 'leaf cap of the histogram learner'),
    'bin_count': (int, 'quantile bins per feature'),
}
BOOLEAN_HYPERPARAMETERS: Dict[str, str] = {
    'zero_base_score': 'start boosting from 0 instead of the target mean',
    'histogram_subtraction': 'derive sibling histograms by subtraction',
}


def add_hyperparameters(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('hyperparameters')
    for name, (kind, text) in HYPERPARAMETERS.items():
        default = LeafWiseConfig.model_fields[name].default
        group.add_argument(
            '--' + name.replace('_', '-'),
            type=kind,
            default=argparse.SUPPRESS,
            help=f'{text} (default {default})',
        )
    for name, text in BOOLEAN_HYPERPARAMETERS.items():
        group.add_argument(
            '--' + name.replace('_', '-'),
            action=argparse.BooleanOptionalAction,
            default=argparse.SUPPRESS,
            help=text,
        )
    parser.add_argument(
        '--config',
        type=Path,
        help='key=value file whose entries become flag defaults',
    )


def build_configs(
    args: argparse.Namespace,
) -> Tuple[TrainConfig, LeafWiseConfig]:
    values = {
        name: getattr(args, name)
        for name in LeafWiseConfig.model_fields
        if hasattr(args, name)
    }
    try:
        config_hist = LeafWiseConfig(**values)
        config_exact = TrainConfig(
            **{
                name: value
                for name, value in values.items()
                if name in TrainConfig.model_fields
            }
        )
    except ValidationError as exc:
        raise UsageError(f'Invalid hyperparameters: {exc}') from None
    return config_exact, config_hist


def config_defaults(
    parser: argparse.ArgumentParser, path: Path
) -> Dict[str, Any]:
    """Read a key=value config file into argparse defaults.

    Keys are long flag names with either dashes or underscores.
    """
    if not path.is_file():
        raise UsageError(f'Config file not found: {path}')
    actions = {
        action.dest: action
        for action in parser._actions
        if action.option_strings and action.dest not in {'help', 'config'}
    }
    defaults: Dict[str, Any] = {}
    for key, value in dotenv_values(path).items():
        dest = key.strip().replace('-', '_')
        action = actions.get(dest)
        if action is None:
            raise UsageError(f'Unknown config key {key!r} in {path}')
        if value is None:
            raise UsageError(f'Config key {key!r} has no value')
        if isinstance(action, argparse.BooleanOptionalAction):
            defaults[dest] = parse_bool(value)
        else:
            # argparse converts string defaults with the flag's type
            defaults[dest] = value
    return defaults


def read_schema(path: Optional[Path]) -> ColumnSchema:
    if path is None:
        return ColumnSchema()
    if not path.is_file():
        raise UsageError(f'Alias file not found: {path}')
    aliases = {
        key: value
        for key, value in dotenv_values(path).items()
        if value is not None
    }
    date_column = aliases.pop('date', 'date')
    return ColumnSchema(date_column=date_column, aliases=aliases)


@contextmanager
def open_input(path: Path) -> Iterator[IO[bytes]]:
    try:
        stream = path.open('rb')
    except OSError as exc:
        raise UsageError(f'Cannot read {path}: {exc.strerror}') from None
    with stream:
        yield stream


@contextmanager
def open_output(path: Optional[Path]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with path.open('w', encoding='utf-8', newline='') as stream:
        yield stream
    logger.info('Wrote %s', path)


def write_output(path: Optional[Path], data: bytes) -> None:
    if path is None:
        sys.stdout.write(data.decode())
        return
    path.write_bytes(data)
    logger.info('Wrote %s', path)


def add_data_arguments(
    parser: argparse.ArgumentParser, *flags: str
) -> None:
    for flag in flags:
        parser.add_argument(
            flag, type=Path, required=True, help='daily CSV file'
        )
    parser.add_argument(
        '--aliases', type=Path, help='key=value table of column aliases'
    )
    parser.add_argument(
        '--lenient',
        action='store_true',
        help='drop rows with missing or non-finite cells',
    )


def add_feature_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--target', default=DEFAULT_TARGET)
    parser.add_argument(
        '--features',
        type=name_list,
        help='comma separated feature columns; default: ranked selection',
    )
    parser.add_argument(
        '--top',
        type=int,
        default=DEFAULT_TOP,
        help='features kept by the ranked selection',
    )


def read_records(path: Path, args: argparse.Namespace) -> List[DailyRecord]:
    schema = read_schema(getattr(args, 'aliases', None))
    with open_input(path) as source:
        return parse_daily_csv(
            source, schema, lenient=getattr(args, 'lenient', False)
        )


def choose_features(
    records: Sequence[DailyRecord],
    target: str,
    features: Optional[Sequence[str]],
    top: int,
) -> List[str]:
    if features:
        return list(features)
    names = [name for name in available_columns(records) if name != target]
    matrix = to_matrix(records, names, target)
    report = second_order_analysis(matrix, correlate_with_target(matrix))
    return select_features(report, top)


def feature_rows(
    records: Sequence[DailyRecord], feature_names: Sequence[str]
) -> npt.NDArray[np.float64]:
    for name in feature_names:
        if not all(record.has(name) for record in records):
            raise SchemaError(name)
    return np.array(
        [[record.value(name) for name in feature_names] for record in records],
        dtype=np.float64,
    ).reshape(len(records), len(feature_names))
