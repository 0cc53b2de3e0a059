"""`simulate` command: Monte Carlo benchmark over settings and methods."""

import argparse
import json

from l2boost.cli.dependencies import add_common_arguments, config_from_args
from l2boost.cli.schemas import SimulateConfig
from l2boost.error_handlers import EXIT_OK
from l2boost.models.enums import OutputFormat
from l2boost.repositories import ResultRepository
from l2boost.services.benchmark import BenchmarkOptions, run_benchmark


def _csv_list(text: str):
    return [item.strip() for item in text.split(",") if item.strip()]


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Run the simulation benchmark")
    add_common_arguments(parser)
    parser.add_argument("--settings", type=_csv_list, default=None,
                        help="Comma-separated setting labels or groups (low-high, growth, decaying, dense)")
    parser.add_argument("--methods", type=_csv_list, default=None, help="Comma-separated method names")
    parser.add_argument("--reps", type=int, default=None)
    parser.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat], default=None,
                        help="Summary table format")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """
    Write records.csv plus the summary table (summary.md or summary.csv).

    Method failures are marked in their cells; the command still succeeds.
    """
    config = config_from_args(SimulateConfig, args)
    options = BenchmarkOptions(boost=config.boost_config())
    report = run_benchmark(config.settings, config.methods, config.reps, config.seed, options, config.threads)

    results = ResultRepository(config.output_dir, {**report.header, **config.header()})
    results.write_records(report.records)
    if config.output_format is OutputFormat.MARKDOWN:
        results.write_summary(report.cells)
    else:
        results.write_cells(report.cells)

    print(json.dumps({
        "cells": len(report.cells),
        "records": len(report.records),
        "failures": len(report.failures),
    }))
    return EXIT_OK
