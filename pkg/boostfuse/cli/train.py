import argparse
import logging
from pathlib import Path

from boostfuse.boosting.exact import train
from boostfuse.boosting.hist import train_hist
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
from boostfuse.ensemble.fusion import train_ensemble
from boostfuse.ensemble.serialization import Predictor, dump_document
from boostfuse.errors import UsageError
from boostfuse.ingest.filters import holdout_tail
from boostfuse.ingest.matrix import to_matrix
from boostfuse.schema.model.document import Learner
from conf.config import settings

logger = logging.getLogger(__name__)


def configure(parser: argparse.ArgumentParser) -> None:
    add_data_arguments(parser, '--train')
    add_feature_arguments(parser)
    parser.add_argument(
        '--learner',
        choices=[learner.value for learner in Learner],
        default=Learner.ensemble.value,
    )
    parser.add_argument(
        '--holdout',
        type=Path,
        help='daily CSV weighting the ensemble; default: tail of --train',
    )
    parser.add_argument('--out', type=Path, required=True)
    add_hyperparameters(parser)


@cli_router.command(
    'train',
    help='train a model and write its document',
    configure=configure,
)
def train_command(args: argparse.Namespace) -> None:
    learner = Learner(args.learner)
    if args.holdout is not None and learner is not Learner.ensemble:
        raise UsageError('--holdout only applies to --learner ensemble')
    config_exact, config_hist = build_configs(args)

    records = read_records(args.train, args)
    features = choose_features(records, args.target, args.features, args.top)
    matrix = to_matrix(records, features, args.target)

    model: Predictor
    if learner is Learner.exact:
        model = train(matrix, config_exact)
    elif learner is Learner.hist:
        model = train_hist(matrix, config_hist)
    else:
        if args.holdout is not None:
            holdout_records = read_records(args.holdout, args)
            holdout = to_matrix(holdout_records, features, args.target)
        else:
            matrix, holdout = holdout_tail(matrix, settings.HOLDOUT_FRACTION)
        model = train_ensemble(matrix, holdout, config_exact, config_hist)

    write_output(args.out, dump_document(model, learner, args.target))
