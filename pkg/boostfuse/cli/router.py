import argparse
from dataclasses import dataclass
from typing import Callable, Dict

Configure = Callable[[argparse.ArgumentParser], None]
Handler = Callable[[argparse.Namespace], None]


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    configure: Configure
    handler: Handler


class CommandRouter:
    """Subcommand registry; command modules register on import."""

    def __init__(self) -> None:
        self.commands: Dict[str, Command] = {}

    def command(
        self, name: str, help: str, configure: Configure
    ) -> Callable[[Handler], Handler]:
        def decorator(handler: Handler) -> Handler:
            self.commands[name] = Command(name, help, configure, handler)
            return handler

        return decorator

    def install(
        self, subparsers: 'argparse._SubParsersAction[argparse.ArgumentParser]'
    ) -> Dict[str, argparse.ArgumentParser]:
        parsers: Dict[str, argparse.ArgumentParser] = {}
        for name in sorted(self.commands):
            command = self.commands[name]
            parser = subparsers.add_parser(name, help=command.help)
            command.configure(parser)
            parser.set_defaults(handler=command.handler, command=name)
            parsers[name] = parser
        return parsers


cli_router = CommandRouter()
