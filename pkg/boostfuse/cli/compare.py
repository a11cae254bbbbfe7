import argparse
from pathlib import Path

from boostfuse.cli.common import (
    add_data_arguments,
    add_feature_arguments,
    add_hyperparameters,
    build_configs,
    choose_features,
    open_output,
    read_records,
)
from boostfuse.cli.router import cli_router
from boostfuse.evaluation.compare import compare_models, default_entries
from boostfuse.evaluation.emit import (
    comparison_rows_to_csv,
    comparison_to_csv,
)
from boostfuse.ingest.matrix import to_matrix
from boostfuse.schema.evaluation.metrics import AccuracyMetric
from conf.config import settings


def configure(parser: argparse.ArgumentParser) -> None:
    add_data_arguments(parser, '--train', '--test')
    add_feature_arguments(parser)
    parser.add_argument('--band', type=float, default=settings.BAND)
    parser.add_argument(
        '--accuracy-metric',
        choices=[metric.value for metric in AccuracyMetric],
        default=AccuracyMetric.r_squared.value,
        help='metric shown in the accuracy row',
    )
    parser.add_argument(
        '--out',
        type=Path,
        help='metric rows by model columns, stdout if omitted',
    )
    parser.add_argument(
        '--rows-out', type=Path, help='one row per model with all metrics'
    )
    add_hyperparameters(parser)


@cli_router.command(
    'compare',
    help='exact, histogram and fused learners side by side',
    configure=configure,
)
def compare(args: argparse.Namespace) -> None:
    config_exact, config_hist = build_configs(args)
    train_records = read_records(args.train, args)
    features = choose_features(
        train_records, args.target, args.features, args.top
    )
    train_matrix = to_matrix(train_records, features, args.target)
    test_matrix = to_matrix(
        read_records(args.test, args), features, args.target
    )

    rows = compare_models(
        default_entries(config_exact, config_hist),
        train_matrix,
        test_matrix,
        args.band,
        AccuracyMetric(args.accuracy_metric),
    )
    with open_output(args.out) as sink:
        comparison_to_csv(rows, sink)
    if args.rows_out is not None:
        with open_output(args.rows_out) as sink:
            comparison_rows_to_csv(rows, sink)
