import argparse
import logging
import sys
from typing import Dict, List, NoReturn, Optional, Sequence

from boostfuse.cli.common import config_defaults
from boostfuse.cli.router import cli_router
from boostfuse.errors import USAGE_EXIT_CODE, BoostFuseError, UsageError
from conf.config import settings

logger = logging.getLogger(__name__)

LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']


class CliParser(argparse.ArgumentParser):
    subcommands: Dict[str, argparse.ArgumentParser]

    # argparse exits with 2 on bad flags; 2 is reserved for data errors
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(f'{self.prog}: {message}')


def create_parser() -> CliParser:
    parser = CliParser(
        prog='boostfuse',
        description='Cooling load forecasting with fused boosted trees',
    )
    parser.add_argument(
        '--log-level',
        type=str.upper,
        choices=LOG_LEVELS,
        default=settings.LOG_LEVEL.upper(),
        help='root log level (default from BOOSTFUSE_LOG_LEVEL)',
    )
    subparsers = parser.add_subparsers(
        title='commands', dest='command', required=True
    )
    parser.subcommands = cli_router.install(subparsers)
    return parser


def setup_logging() -> None:
    logging.basicConfig(
        level=settings.LOG_LEVEL.upper(),
        format=settings.LOG_FORMAT,
        stream=sys.stderr,
    )


def parse(argv: Sequence[str]) -> argparse.Namespace:
    parser = create_parser()
    args = parser.parse_args(argv)
    config = getattr(args, 'config', None)
    if config is None:
        return args

    subparser = parser.subcommands[args.command]
    subparser.set_defaults(**config_defaults(subparser, config))
    # explicit flags still win over the config file
    return parser.parse_args(argv)


def cli_main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    arguments = sys.argv[1:] if argv is None else argv
    try:
        args = parse(arguments)
        logging.getLogger().setLevel(args.log_level)
        logger.debug('Running %s', args.command)
        args.handler(args)
    except BoostFuseError as exc:
        logger.error('%s', exc)
        return exc.exit_code
    except SystemExit as exc:
        # --help exits through argparse
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT_CODE
    return 0
