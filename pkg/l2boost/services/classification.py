"""Binary classification with the boosting plug-in rule and its evaluation harness."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import rankdata

from l2boost.config import settings
from l2boost.exceptions import DegenerateSplit, ZeroVarianceSample
from l2boost.models.boosting import BoostPath, StoppingResult
from l2boost.models.classification import CvResult, GeneRanking, RiskPoint, ScaledCoefficient
from l2boost.models.configs import BoostConfig, CvScheme
from l2boost.models.dataset import Dataset, ExpressionMatrix, SparseCoefficients
from l2boost.models.enums import ResponseCoding
from l2boost.services.boosting import boost_fit, coefficients_at, staged_predict
from l2boost.services.design import standardize
from l2boost.services.model_selection import stop_aic_bernoulli
from l2boost.utils.rng import DATA_STREAM, FOLD_STREAM, make_rng

logger = logging.getLogger(__name__)

EXPRESSION_FLOOR = 100.0
EXPRESSION_CEILING = 16000.0

# Columns with a training standard deviation below this are dropped
_MIN_COLUMN_SD = 1e-12


def preprocess_microarray(e: ExpressionMatrix) -> Dataset:
    """
    Clip to [100, 16000], take log10 and standardize every sample (row).

    Raises:
        ZeroVarianceSample: If a row is constant after clipping and logging
    """
    logged = np.log10(np.clip(e.raw, EXPRESSION_FLOOR, EXPRESSION_CEILING))
    return Dataset(standardize_samples(logged), e.labels.astype(float), e.gene_names)


def standardize_samples(values: np.ndarray) -> np.ndarray:
    """
    Center every row and scale it by its sample standard deviation (ddof=1).

    Applying it to its own output changes nothing beyond rounding.

    Raises:
        ZeroVarianceSample: If a row is constant
    """
    values = np.asarray(values, dtype=float)
    centered = values - values.mean(axis=1, keepdims=True)
    sd = values.std(axis=1, ddof=1)
    flat = np.flatnonzero(sd <= 1e-12 * np.maximum(1.0, np.abs(values).max(axis=1)))
    if flat.size:
        raise ZeroVarianceSample(int(flat[0]))
    return centered / sd[:, None]


def encode_response(y01: np.ndarray, coding: ResponseCoding) -> np.ndarray:
    """0/1 labels as used for fitting: unchanged, or shifted to {-1/2, 1/2}."""
    y01 = np.asarray(y01, dtype=float)
    return y01 - 0.5 if coding is ResponseCoding.CENTERED else y01


def plugin_classify(fitted: np.ndarray, coding: ResponseCoding = ResponseCoding.ZERO_ONE) -> np.ndarray:
    """Class 1 iff the fit exceeds 1/2 (0 for centered coding); ties go to class 0."""
    threshold = 0.0 if coding is ResponseCoding.CENTERED else 0.5
    return (np.asarray(fitted, dtype=float) > threshold).astype(np.int64)


def stratified_train_test_split(
    labels: np.ndarray,
    train_fraction: float,
    seed: int,
    stratified: bool = True,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Split sample indices into sorted training and test index arrays.

    With stratification each class contributes round(train_fraction * n_c)
    training samples.

    Raises:
        DegenerateSplit: If either part misses a class or is empty
    """
    labels = np.asarray(labels)
    rng = make_rng(seed, FOLD_STREAM)
    if stratified:
        train: List[np.ndarray] = []
        for cls in np.unique(labels):
            members = rng.permutation(np.flatnonzero(labels == cls))
            train.append(members[: int(np.floor(train_fraction * members.size + 0.5))])
        train_idx = np.sort(np.concatenate(train))
    else:
        k = int(np.floor(train_fraction * labels.size + 0.5))
        train_idx = np.sort(rng.permutation(labels.size)[:k])
    test_idx = np.setdiff1d(np.arange(labels.size), train_idx)

    if np.unique(labels[train_idx]).size < 2:
        raise DegenerateSplit("A class vanished from the training split", seed=seed)
    if test_idx.size == 0:
        raise DegenerateSplit("The test split is empty", seed=seed, n=int(labels.size))
    return train_idx, test_idx


def _informative_columns(x: np.ndarray) -> np.ndarray:
    sd = x.std(axis=0)
    return np.flatnonzero(sd > _MIN_COLUMN_SD * np.maximum(1.0, np.abs(x).max(axis=0)))


def _fit_path(train: Dataset, coding: ResponseCoding, cfg: BoostConfig) -> Tuple[BoostPath, StoppingResult, np.ndarray]:
    keep = _informative_columns(train.x)
    if keep.size == 0:
        raise DegenerateSplit("No predictor varies on the training rows")
    sub = Dataset(train.x[:, keep], encode_response(train.y, coding))
    path = boost_fit(standardize(sub), cfg)
    offset = 0.5 if coding is ResponseCoding.CENTERED else 0.0
    stop, _ = stop_aic_bernoulli(path, train.y, offset)
    return path, stop, keep


def fit_classifier(
    d: Dataset,
    coding: ResponseCoding = ResponseCoding.ZERO_ONE,
    cfg: BoostConfig = BoostConfig(),
) -> Tuple[SparseCoefficients, int]:
    """
    Boost the coded labels and stop by the Bernoulli AIC.

    Constant columns are ignored and receive a zero coefficient.

    Returns:
        Tuple of (coefficients on the coded scale, m_hat)

    Raises:
        DegenerateSplit: If no column varies
    """
    path, stop, keep = _fit_path(d, coding, cfg)
    reduced = coefficients_at(path, stop.m_hat)
    beta = np.zeros(d.p)
    beta[keep] = reduced.beta
    return SparseCoefficients(reduced.intercept, beta), stop.m_hat


def _one_repeat(d: Dataset, scheme: CvScheme, coding: ResponseCoding, cfg: BoostConfig,
                repeat: int) -> Tuple[float, int, np.ndarray]:
    seed = scheme.seed + repeat
    train_idx, test_idx = stratified_train_test_split(d.y, scheme.train_fraction, seed, scheme.stratified)
    path, stop, keep = _fit_path(d.subset(train_idx), coding, cfg)

    x_test = d.x[np.ix_(test_idx, keep)]
    y_test = d.y[test_idx].astype(np.int64)
    curve = np.array([
        float(np.mean(plugin_classify(f, coding) != y_test))
        for f in staged_predict(path, x_test)
    ])
    logger.debug("Repeat %d: m_hat=%d, test error %.4f", repeat, stop.m_hat, curve[stop.m_hat])
    return float(curve[stop.m_hat]), stop.m_hat, curve


def cv_misclassification(
    d: Dataset,
    scheme: CvScheme = CvScheme(),
    coding: ResponseCoding = ResponseCoding.ZERO_ONE,
    cfg: BoostConfig = BoostConfig(),
    threads: Optional[int] = None,
) -> CvResult:
    """
    Repeated train/test misclassification of the Bernoulli-AIC-stopped plug-in rule.

    Repeat r splits with seed scheme.seed + r; results are merged by repeat
    index so the outcome does not depend on the thread count.

    Raises:
        DegenerateSplit: If the labels hold one class or a split loses a class
    """
    if np.unique(d.y).size < 2:
        raise DegenerateSplit("Both classes must be present", classes=np.unique(d.y).tolist())
    threads = threads or settings.THREADS

    def run(repeat: int) -> Tuple[float, int, np.ndarray]:
        return _one_repeat(d, scheme, coding, cfg, repeat)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(scheme.repeats)))
    else:
        results = [run(r) for r in range(scheme.repeats)]

    rates = np.array([r[0] for r in results])
    m_hats = np.array([r[1] for r in results], dtype=np.int64)
    length = max(r[2].shape[0] for r in results)
    # Paths that stopped early keep their last error for the remaining iterations
    curves = np.vstack([np.pad(r[2], (0, length - r[2].shape[0]), mode="edge") for r in results])
    result = CvResult(rate=float(np.mean(rates)), per_repeat=rates, m_hats=m_hats, error_curve=curves.mean(axis=0))
    logger.info("Misclassification %.4f over %d repeats (%s coding)", result.rate, scheme.repeats, coding.value)
    return result


def wilcoxon_rank_genes(d: Dataset) -> GeneRanking:
    """
    Two-sample rank-sum statistic per column, centered by its null mean.

    The statistic is the class-1 rank sum minus n1 (n + 1) / 2 with midranks
    for ties. Columns are ranked by the absolute statistic, rank 1 strongest.

    Raises:
        DegenerateSplit: If a class is empty
    """
    y = np.asarray(d.y)
    ones = y == 1
    n1 = int(np.count_nonzero(ones))
    if n1 == 0 or n1 == d.n:
        raise DegenerateSplit("Rank-sum statistics need both classes", n1=n1, n=d.n)
    ranks = rankdata(d.x, axis=0)
    stats = ranks[ones].sum(axis=0) - n1 * (d.n + 1) / 2.0
    order = np.argsort(-np.abs(stats), kind="stable")
    position = np.empty(d.p, dtype=np.int64)
    position[order] = np.arange(1, d.p + 1)
    return GeneRanking(statistics=stats, ranks=position, order=order, gene_names=d.column_names)


def scaled_coefficients(
    coef: SparseCoefficients,
    d: Dataset,
    ranking: Optional[GeneRanking] = None,
) -> List[ScaledCoefficient]:
    """
    beta_j * sd(X_j) for the active columns, in ascending order.

    Standard deviations use ddof=0, matching the design standardization.
    """
    sd = d.x.std(axis=0)
    rows = [
        ScaledCoefficient(
            name=d.column_names[j],
            index=int(j),
            coefficient=float(coef.beta[j]),
            scaled=float(coef.beta[j] * sd[j]),
            wilcoxon_rank=int(ranking.ranks[j]) if ranking is not None else 0,
        )
        for j in coef.active_set
    ]
    return sorted(rows, key=lambda row: (row.scaled, row.index))


# Synthetic linear-probability experiment

RISK_INTERCEPT = 0.5
RISK_SLOPES = (0.3, -0.15, 0.05)


def linear_probability(x: np.ndarray, p: int) -> np.ndarray:
    """P(Y = 1 | x) = 0.5 + 0.3 x1 - 0.15 x2 + 0.05 x3 for x uniform on [-1, 1]^p."""
    slopes = np.zeros(p)
    slopes[: len(RISK_SLOPES)] = RISK_SLOPES[:p]
    return RISK_INTERCEPT + x @ slopes


def _draw_linear_probability(n: int, p: int, seed: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    rng = make_rng(seed, DATA_STREAM)
    x = rng.uniform(-1.0, 1.0, size=(n, p))
    prob = linear_probability(x, p)
    y = (rng.random(n) < prob).astype(float)
    return x, y, prob


def excess_risk_trend(
    ns: Sequence[int] = (50, 200, 800),
    reps: int = 20,
    p: int = 10,
    seed: int = 0,
    test_size: int = 20000,
    cfg: BoostConfig = BoostConfig(m_max=500),
) -> List[RiskPoint]:
    """
    Excess misclassification risk of the plug-in rule over training sizes.

    The conditional risk of each fitted rule is evaluated exactly on a large
    test sample using the known probabilities; the Bayes risk is E min(f, 1 - f)
    on the same sample.
    """
    x_test, _, prob_test = _draw_linear_probability(test_size, p, seed + 1_000_000)
    bayes = float(np.mean(np.minimum(prob_test, 1.0 - prob_test)))
    points: List[RiskPoint] = []
    for n in ns:
        excess = np.empty(reps)
        for r in range(reps):
            x, y, _ = _draw_linear_probability(n, p, seed + r)
            coef, _ = fit_classifier(Dataset(x, y), ResponseCoding.ZERO_ONE, cfg)
            pred = plugin_classify(coef.predict(x_test))
            risk = float(np.mean(np.where(pred == 1, 1.0 - prob_test, prob_test)))
            excess[r] = risk - bayes
        se = float(np.std(excess, ddof=1) / np.sqrt(reps)) if reps > 1 else 0.0
        points.append(RiskPoint(n=int(n), mean_excess=float(excess.mean()), se_excess=se, bayes_risk=bayes))
        logger.info("n=%d: excess risk %.4f (%.4f)", n, points[-1].mean_excess, se)
    return points
