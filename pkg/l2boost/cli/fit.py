"""`fit` command: boost a CSV dataset and write coefficients, path and criterion curve."""

import argparse
import json
import logging

import numpy as np
import pandas as pd

from l2boost.cli.dependencies import add_common_arguments, config_from_args
from l2boost.cli.schemas import FitConfig
from l2boost.error_handlers import EXIT_OK
from l2boost.exceptions import InputFormatError
from l2boost.models.enums import StoppingRule
from l2boost.repositories import DataRepository, ResultRepository
from l2boost.services.boosting import boost_fit, coefficients_at
from l2boost.services.design import standardize
from l2boost.services.model_selection import stop_aic_bernoulli, stop_aicc

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("fit", help="Fit L2Boosting to a CSV file")
    add_common_arguments(parser)
    parser.add_argument("--input", default=None, help="CSV with a header row")
    parser.add_argument("--response", default=None, help="Response column name")
    parser.add_argument("--stopping", choices=["aicc", "aic-bernoulli", "fixed"], default=None)
    parser.add_argument("--variant", choices=["l2boost", "fslr"], default=None)
    parser.add_argument("--m-fixed", dest="m_fixed", type=int, default=None,
                        help="Iteration count for --stopping fixed (default: m-max)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """
    Fit, stop and write result files.

    Files: coefficients.csv, path.csv, criterion.dat and selection.csv.
    """
    config = config_from_args(FitConfig, args)
    data = DataRepository().read_dataset(config.input, config.response)
    path = boost_fit(standardize(data), config.boost_config(variant=config.variant))

    if config.stopping is StoppingRule.AICC:
        stop, path = stop_aicc(path)
        m_hat, curve, first_m = stop.m_hat, stop.criterion_values, stop.first_m
    elif config.stopping is StoppingRule.AIC_BERNOULLI:
        if not np.all(np.isin(data.y, (0.0, 1.0))):
            raise InputFormatError("Bernoulli AIC stopping needs a 0/1 response", response=config.response)
        stop, path = stop_aic_bernoulli(path, data.y)
        m_hat, curve, first_m = stop.m_hat, stop.criterion_values, stop.first_m
    else:
        m_hat = path.m_total if config.m_fixed is None else config.m_fixed
        curve = np.concatenate([[path.rss_initial], path.rss]) / data.n
        first_m = 0

    coef = coefficients_at(path, m_hat)
    results = ResultRepository(config.output_dir, config.header())
    results.write_coefficients(coef, data.column_names, data.x.std(axis=0))
    results.write_path(path)
    results.write_curve(curve, first_m)
    results.write_frame("selection.csv", pd.DataFrame({
        "rule": [config.stopping.value],
        "m_hat": [m_hat],
        "m_total": [path.m_total],
        "stopped_early": [path.stopped_early],
    }))

    print(json.dumps({
        "m_hat": m_hat,
        "m_total": path.m_total,
        "active": [data.column_names[j] for j in coef.active_set],
    }))
    return EXIT_OK
