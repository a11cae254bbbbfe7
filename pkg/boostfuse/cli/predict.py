import argparse
from pathlib import Path

from boostfuse.cli.common import (
    add_data_arguments,
    feature_rows,
    open_input,
    open_output,
    read_records,
)
from boostfuse.cli.router import cli_router
from boostfuse.ensemble.serialization import load_document
from boostfuse.evaluation.emit import predictions_to_csv


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--model', type=Path, required=True)
    add_data_arguments(parser, '--data')
    parser.add_argument(
        '--out', type=Path, help='predictions CSV, stdout if omitted'
    )


@cli_router.command(
    'predict',
    help='predict every row of a daily CSV',
    configure=configure,
)
def predict(args: argparse.Namespace) -> None:
    with open_input(args.model) as source:
        model = load_document(source)
    records = read_records(args.data, args)
    rows = feature_rows(records, model.feature_names)
    with open_output(args.out) as sink:
        predictions_to_csv(
            [record.date for record in records],
            model.predict_batch(rows),
            sink,
        )
