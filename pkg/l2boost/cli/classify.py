"""`classify` command: misclassification estimate and gene ranking for an expression matrix."""

import argparse
import json

from l2boost.cli.dependencies import add_common_arguments, config_from_args
from l2boost.cli.schemas import ClassifyConfig
from l2boost.error_handlers import EXIT_OK
from l2boost.models.configs import CvScheme
from l2boost.models.dataset import Dataset
from l2boost.repositories import DataRepository, ResultRepository
from l2boost.services.classification import (
    cv_misclassification,
    excess_risk_trend,
    fit_classifier,
    preprocess_microarray,
    scaled_coefficients,
    wilcoxon_rank_genes,
)


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="Boosting plug-in classification")
    add_common_arguments(parser)
    parser.add_argument("--expression", default=None, help="CSV, samples in rows, genes in columns")
    parser.add_argument("--labels", default=None, help="0/1 label column name")
    parser.add_argument("--repeats", type=int, default=None)
    parser.add_argument("--train-fraction", dest="train_fraction", type=float, default=None)
    parser.add_argument("--coding", choices=["zero-one", "centered"], default=None)
    parser.add_argument("--no-preprocess", dest="preprocess", action="store_const", const=False, default=None,
                        help="Use the matrix as given")
    parser.add_argument("--risk-trend", dest="risk_trend", action="store_const", const=True, default=None,
                        help="Run the synthetic excess-risk experiment instead")
    parser.set_defaults(handler=run)


def _run_risk_trend(config: ClassifyConfig) -> int:
    points = excess_risk_trend(
        ns=config.risk_sizes,
        reps=config.repeats,
        seed=config.seed,
        cfg=config.boost_config(),
    )
    ResultRepository(config.output_dir, config.header()).write_risk(points)
    print(json.dumps({"n": [p.n for p in points], "mean_excess": [p.mean_excess for p in points]}))
    return EXIT_OK


def run(args: argparse.Namespace) -> int:
    """
    Write cv.csv, error_curve.dat and scaled_coefficients.csv.

    The scaled coefficients come from one fit on all samples.
    """
    config = config_from_args(ClassifyConfig, args)
    if config.risk_trend:
        return _run_risk_trend(config)

    expression = DataRepository().read_expression(config.expression, config.labels)
    if config.preprocess:
        data = preprocess_microarray(expression)
    else:
        data = Dataset(expression.raw, expression.labels.astype(float), expression.gene_names)

    scheme = CvScheme(train_fraction=config.train_fraction, repeats=config.repeats, seed=config.seed)
    cfg = config.boost_config()
    result = cv_misclassification(data, scheme, config.coding, cfg, config.threads)
    coef, m_hat = fit_classifier(data, config.coding, cfg)
    rows = scaled_coefficients(coef, data, wilcoxon_rank_genes(data))

    results = ResultRepository(config.output_dir, config.header())
    results.write_cv(result)
    results.write_curve(result.error_curve, first_m=0, name="error_curve.dat")
    results.write_scaled(rows)

    print(json.dumps({
        "rate": result.rate,
        "se": result.se,
        "best_curve_rate": result.best_curve_rate,
        "mean_m_hat": result.mean_m_hat,
        "m_hat_full": m_hat,
        "active_genes": len(rows),
    }))
    return EXIT_OK
