import argparse
from pathlib import Path

from boostfuse.cli.common import (
    add_data_arguments,
    add_feature_arguments,
    open_output,
    read_records,
    write_output,
)
from boostfuse.cli.router import cli_router
from boostfuse.features.emit import (
    correlation_matrix_to_csv,
    report_to_csv,
    report_to_json,
)
from boostfuse.features.report import (
    correlate_with_target,
    correlation_matrix,
    second_order_analysis,
    select_features,
)
from boostfuse.ingest.matrix import available_columns, to_matrix


def configure(parser: argparse.ArgumentParser) -> None:
    add_data_arguments(parser, '--data')
    add_feature_arguments(parser)
    parser.add_argument(
        '--out',
        type=Path,
        help='selected features as ranked CSV, stdout if omitted',
    )
    parser.add_argument(
        '--json-out',
        type=Path,
        help='full report with second-order links as JSON',
    )
    parser.add_argument(
        '--matrix-out', type=Path, help='pairwise correlation matrix CSV'
    )


@cli_router.command(
    'analyze',
    help='rank features by correlation with the target',
    configure=configure,
)
def analyze(args: argparse.Namespace) -> None:
    records = read_records(args.data, args)
    candidates = args.features or [
        name for name in available_columns(records) if name != args.target
    ]
    matrix = to_matrix(records, candidates, args.target)

    report = second_order_analysis(matrix, correlate_with_target(matrix))
    selected = select_features(report, args.top)

    with open_output(args.out) as sink:
        report_to_csv(report, sink, selected)
    if args.json_out is not None:
        write_output(args.json_out, report_to_json(report))
    if args.matrix_out is not None:
        with open_output(args.matrix_out) as sink:
            correlation_matrix_to_csv(correlation_matrix(matrix), sink)
