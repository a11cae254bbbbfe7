import argparse
import logging
from pathlib import Path

from boostfuse.cli.common import (
    add_data_arguments,
    open_input,
    open_output,
    read_records,
    write_output,
)
from boostfuse.cli.router import cli_router
from boostfuse.ensemble.serialization import (
    model_from_document,
    parse_document,
)
from boostfuse.evaluation.emit import metrics_to_json, series_to_csv
from boostfuse.evaluation.metrics import metrics
from boostfuse.ingest.matrix import to_matrix
from conf.config import settings

logger = logging.getLogger(__name__)


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--model', type=Path, required=True)
    add_data_arguments(parser, '--data')
    parser.add_argument(
        '--band',
        type=float,
        default=settings.BAND,
        help='relative tolerance of band accuracy',
    )
    parser.add_argument(
        '--metrics-out', type=Path, help='metrics JSON, stdout if omitted'
    )
    parser.add_argument(
        '--series-out',
        type=Path,
        help='date, actual, predicted CSV for plotting',
    )


@cli_router.command(
    'evaluate',
    help='score a model against a daily CSV',
    configure=configure,
)
def evaluate(args: argparse.Namespace) -> None:
    with open_input(args.model) as source:
        document = parse_document(source.read())
    model = model_from_document(document)

    records = read_records(args.data, args)
    matrix = to_matrix(
        records, list(model.feature_names), document.target_name
    )
    predictions = model.predict_batch(matrix.rows)
    result = metrics(predictions, matrix.target, args.band)
    logger.info(
        'MAE %r, RMSE %r, R2 %r, band accuracy %r',
        result.mae,
        result.rmse,
        result.r_squared,
        result.band_accuracy,
    )

    context = {
        'learner': document.learner.value,
        'target': document.target_name,
    }
    write_output(args.metrics_out, metrics_to_json(result, context))
    if args.series_out is not None:
        with open_output(args.series_out) as sink:
            series_to_csv(matrix.dates, matrix.target, predictions, sink)
