"""Shared argument wiring and config assembly for CLI commands."""

import argparse

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from typing import Any, Dict, Optional, Type, TypeVar

from l2boost.cli.schemas import RunConfig
from l2boost.exceptions import InputFormatError

ConfigT = TypeVar("ConfigT", bound=RunConfig)

# argparse destinations that are not config fields
_PARSER_ONLY = {"handler", "config", "verbose", "command"}


def add_common_arguments(parser: argparse.ArgumentParser, boosting: bool = True) -> None:
    """Flags accepted by every command. Defaults are None so file values survive."""
    parser.add_argument("--config", type=str, default=None, help="TOML file with config values")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--output-dir", dest="output_dir", default=None)
    parser.add_argument("--threads", type=int, default=None, help="Worker thread cap")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--nu", type=float, default=None, help="Step size in (0, 1]")
    if boosting:
        parser.add_argument("--m-max", dest="m_max", type=int, default=None, help="Boosting iterations")


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Read flat key = value pairs from a TOML file.

    Dashes in keys are accepted and mapped to underscores.

    Raises:
        InputFormatError: If the file is missing, malformed or nested
    """
    try:
        with open(path, "rb") as handle:
            data = tomllib.load(handle)
    except FileNotFoundError as exc:
        raise InputFormatError(f"Config file not found: {path}", path=path) from exc
    except tomllib.TOMLDecodeError as exc:
        raise InputFormatError(f"Malformed config file {path}: {exc}", path=path) from exc
    nested = [key for key, value in data.items() if isinstance(value, dict)]
    if nested:
        raise InputFormatError("Config files must be flat key = value pairs", path=path, tables=nested)
    return {key.replace("-", "_"): value for key, value in data.items()}


def config_from_args(model: Type[ConfigT], args: argparse.Namespace, file_path: Optional[str] = None) -> ConfigT:
    """
    Merge config-file values with command-line flags; flags win.

    Raises:
        pydantic.ValidationError: If the merged values violate the model
    """
    file_path = file_path if file_path is not None else getattr(args, "config", None)
    values: Dict[str, Any] = load_config_file(file_path) if file_path else {}
    values.update({
        key: value
        for key, value in vars(args).items()
        if key not in _PARSER_ONLY and value is not None
    })
    return model(**values)
