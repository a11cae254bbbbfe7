import argparse
import logging
from pathlib import Path

from boostfuse.cli.common import (
    add_data_arguments,
    open_input,
    open_output,
    read_records,
)
from boostfuse.cli.router import cli_router
from boostfuse.errors import UsageError
from boostfuse.ingest.aggregate import aggregate_days
from boostfuse.ingest.filters import filter_operating_days, split_by_month
from boostfuse.ingest.reader import parse_minutely_csv, write_daily_csv

logger = logging.getLogger(__name__)


def configure(parser: argparse.ArgumentParser) -> None:
    add_data_arguments(parser, '--data')
    parser.add_argument(
        '--out', type=Path, help='canonical CSV, stdout if omitted'
    )
    parser.add_argument(
        '--minutely',
        action='store_true',
        help='input is a minutely gateway replay, aggregate it per day',
    )
    parser.add_argument(
        '--filter-operating',
        action='store_true',
        help='keep only days that produced cooling',
    )
    parser.add_argument('--train-month', type=int)
    parser.add_argument('--test-month', type=int)
    parser.add_argument('--train-out', type=Path)
    parser.add_argument('--test-out', type=Path)


@cli_router.command(
    'ingest',
    help='validate a CSV and rewrite it in canonical form',
    configure=configure,
)
def ingest(args: argparse.Namespace) -> None:
    split_flags = (
        args.train_month,
        args.test_month,
        args.train_out,
        args.test_out,
    )
    wants_split = any(flag is not None for flag in split_flags)
    if wants_split and any(flag is None for flag in split_flags):
        raise UsageError(
            '--train-month, --test-month, --train-out and --test-out '
            'must be given together'
        )

    if args.minutely:
        if args.filter_operating or wants_split:
            raise UsageError(
                '--minutely output has no cooling column to filter or split'
            )
        with open_input(args.data) as source:
            daily = aggregate_days(parse_minutely_csv(source, args.lenient))
        with open_output(args.out) as sink:
            write_daily_csv(daily, sink)
        return

    records = read_records(args.data, args)
    if args.filter_operating:
        records = filter_operating_days(records)

    if args.out is not None or not wants_split:
        with open_output(args.out) as sink:
            write_daily_csv(records, sink)

    if wants_split:
        split = split_by_month(records, args.train_month, args.test_month)
        for path, part in (
            (args.train_out, split.train),
            (args.test_out, split.test),
        ):
            with open_output(path) as sink:
                write_daily_csv(part, sink)
