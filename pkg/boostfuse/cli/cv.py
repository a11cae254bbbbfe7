import argparse
from pathlib import Path

from boostfuse.cli.common import (
    add_data_arguments,
    add_feature_arguments,
    add_hyperparameters,
    build_configs,
    choose_features,
    read_records,
    write_output,
)
from boostfuse.cli.router import cli_router
from boostfuse.evaluation.compare import make_trainer
from boostfuse.evaluation.cv import k_fold_cv
from boostfuse.evaluation.emit import cv_to_json
from boostfuse.ingest.matrix import to_matrix
from boostfuse.schema.model.document import Learner
from conf.config import settings


def configure(parser: argparse.ArgumentParser) -> None:
    add_data_arguments(parser, '--data')
    add_feature_arguments(parser)
    parser.add_argument(
        '--learner',
        choices=[learner.value for learner in Learner],
        default=Learner.ensemble.value,
    )
    parser.add_argument('--folds', type=int, default=5)
    parser.add_argument('--band', type=float, default=settings.BAND)
    parser.add_argument(
        '--out', type=Path, help='cross-validation JSON, stdout if omitted'
    )
    add_hyperparameters(parser)


@cli_router.command(
    'cv',
    help='k-fold cross-validation report',
    configure=configure,
)
def cv(args: argparse.Namespace) -> None:
    config_exact, config_hist = build_configs(args)
    records = read_records(args.data, args)
    features = choose_features(records, args.target, args.features, args.top)
    matrix = to_matrix(records, features, args.target)

    trainer = make_trainer(Learner(args.learner), config_exact, config_hist)
    result = k_fold_cv(
        matrix, args.folds, config_exact.seed, trainer, args.band
    )
    write_output(args.out, cv_to_json(result))
