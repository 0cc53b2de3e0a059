"""Monte Carlo benchmark: settings, estimators and per-cell aggregation."""

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from l2boost.config import settings
from l2boost.exceptions import InputFormatError, L2BoostException
from l2boost.models.boosting import BoostPath, StoppingResult
from l2boost.models.configs import BoostConfig, LassoConfig, RidgeConfig
from l2boost.models.dataset import Dataset, SparseCoefficients, StandardizedDesign
from l2boost.models.enums import Covariance, Tuning
from l2boost.models.simulation import (
    BenchmarkCell,
    BenchmarkReport,
    ReplicationRecord,
    Setting,
    SimulationModel,
)
from l2boost.services import baselines
from l2boost.services.boosting import boost_fit, coefficients_at, mse_curve
from l2boost.services.design import exact_mse, standardize
from l2boost.services.model_selection import setting_oracle, stop_aicc
from l2boost.services.simulation_models import (
    draw_dataset,
    make_decaying_model,
    make_dense_model,
    make_three_effect_model,
)

logger = logging.getLogger(__name__)


# Settings

_THREE_EFFECT = re.compile(r"^(identity|banded)-p(\d+)(?:-n(\d+))?$")
_DECAYING = re.compile(r"^decaying-n(\d+)$")
_DENSE = re.compile(r"^dense-p100(?:-n(\d+))?$")

DEFAULT_N = 20


def parse_setting(label: str) -> Setting:
    """
    Build a Setting from its label.

    Labels: "identity-p10", "banded-p100", "identity-p300-n60",
    "decaying-n100", "dense-p100" (optionally "-n<N>" on the last).

    Raises:
        InputFormatError: If the label matches no known setting
    """
    match = _THREE_EFFECT.match(label)
    if match:
        cov = Covariance(match.group(1))
        p = int(match.group(2))
        n = int(match.group(3) or DEFAULT_N)
        model = make_three_effect_model(p, cov)
        return Setting(label, n, lambda seed: model)
    match = _DECAYING.match(label)
    if match:
        n = int(match.group(1))
        return Setting(label, n, lambda seed: make_decaying_model(n, 1.0, seed))
    match = _DENSE.match(label)
    if match:
        model = make_dense_model()
        return Setting(label, int(match.group(1) or DEFAULT_N), lambda seed: model)
    raise InputFormatError(f"Unknown setting label '{label}'", label=label)


# Named groups usable wherever a setting label is expected
SETTING_GROUPS: Dict[str, List[str]] = {
    "low-high": [
        "identity-p3", "identity-p10", "identity-p100",
        "banded-p3", "banded-p10", "banded-p100",
    ],
    "growth": ["identity-p3-n20", "identity-p30-n40", "identity-p300-n60"],
    "decaying": ["decaying-n100"],
    "dense": ["dense-p100"],
}


def expand_settings(labels: Sequence[str]) -> List[str]:
    """Replace group names by their member labels, keeping order and dropping repeats."""
    expanded: List[str] = []
    for label in labels:
        expanded.extend(SETTING_GROUPS.get(label, [label]))
    return list(dict.fromkeys(expanded))


# Methods

@dataclass
class BenchmarkOptions:
    boost: BoostConfig = field(default_factory=BoostConfig)
    lasso: LassoConfig = field(default_factory=LassoConfig)
    ridge: RidgeConfig = field(default_factory=RidgeConfig)


class ReplicationContext:
    """One replication's data with lazily shared intermediate fits."""

    def __init__(self, data: Dataset, model: SimulationModel, seed: int, options: BenchmarkOptions):
        self.data = data
        self.model = model
        self.seed = seed
        self.options = options

    @cached_property
    def design(self) -> StandardizedDesign:
        return standardize(self.data)

    @cached_property
    def path(self) -> BoostPath:
        return boost_fit(self.design, self.options.boost)

    @cached_property
    def aicc_stop(self) -> StoppingResult:
        return stop_aicc(self.path)[0]

    def mse(self, coef: SparseCoefficients) -> float:
        return exact_mse(coef, self.model.truth, self.model.v)


@dataclass(frozen=True)
class MethodOutcome:
    """
    Result of one method on one replication.

    grid_mse is set by methods tuned once per setting: the exact MSE at
    every grid point. The runner picks one index for the whole setting and
    fills in mse, tuning (via grid_label) and, when grid_active is given,
    the active-set size at that index.
    """
    mse: float
    tuning: str
    active: Optional[int] = None
    grid_mse: Optional[np.ndarray] = None
    grid_label: Optional[Callable[[int], str]] = None
    grid_active: Optional[np.ndarray] = None


Method = Callable[[ReplicationContext], MethodOutcome]


def _l2boost(ctx: ReplicationContext) -> MethodOutcome:
    coef = coefficients_at(ctx.path, ctx.aicc_stop.m_hat)
    return MethodOutcome(ctx.mse(coef), f"m={ctx.aicc_stop.m_hat}", int(coef.active_set.size))


def _l2boost_oracle(ctx: ReplicationContext) -> MethodOutcome:
    return MethodOutcome(
        float("nan"),
        "setting",
        grid_mse=mse_curve(ctx.path, ctx.model),
        grid_label="m={}".format,
        grid_active=_active_counts(ctx.path),
    )


def _active_counts(path: BoostPath) -> np.ndarray:
    """Number of distinct selected columns after each iteration m = 0..M."""
    first = np.zeros(path.m_total, dtype=int)
    first[np.unique(path.indices, return_index=True)[1]] = 1
    return np.concatenate([[0], np.cumsum(first)])


def _lasso(ctx: ReplicationContext) -> MethodOutcome:
    fit = baselines.lasso_cv(ctx.data, ctx.options.lasso, ctx.seed)
    return MethodOutcome(ctx.mse(fit.coefficients), f"lambda={fit.lam:.6g}", int(fit.coefficients.active_set.size))


def _lasso_oracle(ctx: ReplicationContext) -> MethodOutcome:
    mses, _ = baselines.lasso_grid_mse(ctx.data, ctx.model, ctx.options.lasso)
    ratios = baselines.lasso_ratios(ctx.options.lasso)
    return MethodOutcome(
        float("nan"),
        "setting",
        grid_mse=mses,
        grid_label=lambda k: f"lambda_ratio={ratios[k]:.6g}",
    )


def _forward(ctx: ReplicationContext) -> MethodOutcome:
    sel = baselines.forward_select_aic(ctx.design)
    return MethodOutcome(ctx.mse(sel.coefficients), f"k={len(sel.order)}", len(sel.order))


def _ridge_cv(ctx: ReplicationContext) -> MethodOutcome:
    fit = baselines.ridge_cv(ctx.data, ctx.options.ridge, ctx.seed)
    return MethodOutcome(ctx.mse(fit.coefficients), f"lambda={fit.lam:.6g}", ctx.design.p)


def _ridge_oracle(ctx: ReplicationContext) -> MethodOutcome:
    grid = ctx.options.ridge.lambda_grid
    return MethodOutcome(
        float("nan"),
        "setting",
        ctx.design.p,
        grid_mse=baselines.ridge_grid_mse(ctx.data, ctx.model, grid),
        grid_label=lambda k: f"lambda={grid[k]:.6g}",
    )


def _ols(ctx: ReplicationContext) -> MethodOutcome:
    coef = baselines.ols_fit(ctx.design)
    return MethodOutcome(ctx.mse(coef), "none", ctx.design.p)


def _truth(ctx: ReplicationContext) -> MethodOutcome:
    return MethodOutcome(ctx.mse(ctx.model.truth), "none", int(ctx.model.truth.active_set.size))


METHODS: Dict[str, Tuple[Method, str]] = {
    "l2boost": (_l2boost, "aicc"),
    "l2boost*": (_l2boost_oracle, Tuning.ORACLE.value),
    "lasso": (_lasso, Tuning.CV10.value),
    "lasso*": (_lasso_oracle, Tuning.ORACLE.value),
    "fwd.var.sel": (_forward, "aic"),
    "ridge": (_ridge_cv, Tuning.CV10.value),
    "ridge*": (_ridge_oracle, Tuning.ORACLE.value),
    "ols": (_ols, "none"),
    "truth": (_truth, "none"),
}


def register_method(name: str, method: Method, tuning: str) -> None:
    """Add or replace an estimator in the registry."""
    METHODS[name] = (method, tuning)


# Runner

_Row = Tuple[str, int, Optional[MethodOutcome], Optional[str]]


def _run_replication(setting: Setting, methods: Sequence[str], rep: int, seed: int,
                     options: BenchmarkOptions) -> List[_Row]:
    model = setting.model(seed)
    ctx = ReplicationContext(draw_dataset(model, setting.n, seed), model, seed, options)
    rows: List[_Row] = []
    for name in methods:
        method, _ = METHODS[name]
        try:
            rows.append((name, rep, method(ctx), None))
        except L2BoostException as exc:
            logger.warning("%s failed on %s rep %d: %s", name, setting.label, rep, exc.code)
            rows.append((name, rep, None, exc.code))
    return rows


def _summarize(setting: str, method: str, tuning: str, mses: List[float], failures: int) -> BenchmarkCell:
    values = np.asarray(mses, dtype=float)
    count = values.shape[0]
    if count == 0:
        return BenchmarkCell(setting, method, tuning, float("nan"), float("nan"), 0, failures)
    mean = float(np.sum(values) / count)
    se = float(np.std(values, ddof=1) / np.sqrt(count)) if count > 1 else 0.0
    return BenchmarkCell(setting, method, tuning, mean, se, count, failures)


def _tune_per_setting(ok: List[Tuple[int, MethodOutcome]]) -> List[Tuple[int, MethodOutcome]]:
    """Replace per-replication grids by their values at one index chosen for the whole setting."""
    oracle = setting_oracle([out.grid_mse for _, out in ok])
    tuned = []
    for (rep, out), mse in zip(ok, oracle.mses):
        active = out.active
        if out.grid_active is not None:
            active = int(out.grid_active[min(oracle.index, out.grid_active.shape[0] - 1)])
        tuned.append((rep, MethodOutcome(float(mse), out.grid_label(oracle.index), active)))
    return tuned


def run_benchmark(
    setting_labels: Sequence[str],
    methods: Sequence[str],
    reps: int = 50,
    base_seed: int = 0,
    options: Optional[BenchmarkOptions] = None,
    threads: Optional[int] = None,
) -> BenchmarkReport:
    """
    Evaluate every method on every setting over reps replications.

    Replication r uses seed base_seed + r for its data and for any
    method-internal randomness. Method failures are recorded per cell and
    do not abort the run.

    Raises:
        InputFormatError: If a setting label or method name is unknown
    """
    options = options or BenchmarkOptions()
    threads = threads or settings.THREADS
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise InputFormatError(f"Unknown methods: {', '.join(unknown)}", methods=unknown)
    setting_labels = expand_settings(setting_labels)
    parsed = [parse_setting(label) for label in setting_labels]

    cells: List[BenchmarkCell] = []
    records: List[ReplicationRecord] = []
    failures: List[Tuple[str, str, int, str]] = []

    for setting in parsed:
        logger.info("Running setting %s (n=%d, %d reps)", setting.label, setting.n, reps)
        jobs = [(setting, methods, r, base_seed + r, options) for r in range(reps)]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                per_rep = list(pool.map(lambda job: _run_replication(*job), jobs))
        else:
            per_rep = [_run_replication(*job) for job in jobs]

        for name in methods:
            tuning = METHODS[name][1]
            rows = [row for rep_rows in per_rep for row in rep_rows if row[0] == name]
            rows.sort(key=lambda row: row[1])
            ok = [(rep, out) for _, rep, out, _ in rows if out is not None]
            for _, rep, out, code in rows:
                if out is None:
                    failures.append((setting.label, name, rep, code))

            if ok and ok[0][1].grid_mse is not None:
                ok = _tune_per_setting(ok)

            for rep, out in ok:
                records.append(ReplicationRecord(setting.label, name, out.tuning, rep, out.mse, out.active))
            cells.append(_summarize(setting.label, name, tuning, [out.mse for _, out in ok], len(rows) - len(ok)))

    header = {
        "version": settings.VERSION,
        "rng": settings.RNG_ALGORITHM,
        "base_seed": str(base_seed),
        "reps": str(reps),
        "settings": ",".join(setting_labels),
        "methods": ",".join(methods),
        "nu": str(options.boost.nu),
        "m_max": str(options.boost.m_max),
    }
    return BenchmarkReport(cells=cells, records=records, header=header, failures=failures)


def summary_from_records(records: Sequence[ReplicationRecord], tunings: Dict[str, str]) -> List[BenchmarkCell]:
    """Recompute cell summaries from long-format records."""
    keys: Dict[Tuple[str, str], List[float]] = {}
    for rec in sorted(records, key=lambda r: (r.setting, r.method, r.rep)):
        keys.setdefault((rec.setting, rec.method), []).append(rec.mse)
    return [
        _summarize(setting, method, tunings.get(method, ""), values, 0)
        for (setting, method), values in keys.items()
    ]
