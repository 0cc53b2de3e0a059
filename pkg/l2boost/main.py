"""Command-line entry point."""

import argparse
import logging
import sys
from typing import Callable, List, Optional, Tuple, Type

from l2boost.cli import classify, fit, greedy_check, simulate
from l2boost.config import settings
from l2boost.error_handlers import register_exception_handlers
from l2boost.exceptions import InputFormatError

ExceptionHandler = Callable[[BaseException], int]


class _ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as input-format failures instead of exiting."""

    def error(self, message: str):
        raise InputFormatError(f"{self.prog}: {message}")


def configure_logging(verbosity: int = 0) -> None:
    """WARNING by default (or L2BOOST_LOG_LEVEL); -v gives INFO, -vv DEBUG."""
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


class Application:
    """Argument parser plus ordered exception handlers."""

    def __init__(self, title: str, version: str):
        self.parser = _ArgumentParser(prog=title, description="L2Boosting for high-dimensional linear models")
        self.parser.add_argument("--version", action="version", version=f"%(prog)s {version}")
        self.subparsers = self.parser.add_subparsers(dest="command", required=True)
        self.exception_handlers: List[Tuple[Type[BaseException], ExceptionHandler]] = []

    def add_exception_handler(self, exc_type: Type[BaseException], handler: ExceptionHandler) -> None:
        self.exception_handlers.append((exc_type, handler))

    def include_command(self, register: Callable) -> None:
        register(self.subparsers)

    def handle_exception(self, exc: BaseException) -> int:
        for exc_type, handler in self.exception_handlers:
            if isinstance(exc, exc_type):
                return handler(exc)
        raise exc

    def run(self, argv: Optional[List[str]] = None) -> int:
        try:
            args = self.parser.parse_args(argv)
            configure_logging(args.verbose)
            return args.handler(args)
        except Exception as exc:
            return self.handle_exception(exc)


app = Application(settings.APP_NAME, settings.VERSION)

# Register global exception handlers
register_exception_handlers(app)

# Register commands
app.include_command(fit.register)
app.include_command(simulate.register)
app.include_command(classify.register)
app.include_command(greedy_check.register)


def main(argv: Optional[List[str]] = None) -> int:
    return app.run(argv)


if __name__ == "__main__":
    sys.exit(main())
