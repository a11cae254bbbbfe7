import sys

from boostfuse.cli.main import cli_main

if __name__ == '__main__':
    sys.exit(cli_main())
