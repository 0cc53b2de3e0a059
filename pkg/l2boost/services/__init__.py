"""Services module for estimation, model selection and experiments."""

from l2boost.services.baselines import (
    forward_select_aic,
    lasso_cd,
    lasso_cv,
    lasso_grid_mse,
    lasso_oracle,
    lasso_ratios,
    ols_fit,
    ridge_cv,
    ridge_fit,
    ridge_oracle,
)
from l2boost.services.benchmark import parse_setting, run_benchmark
from l2boost.services.boosting import boost_fit, coefficients_at, mse_curve, predict, staged_predict
from l2boost.services.classification import (
    cv_misclassification,
    excess_risk_trend,
    plugin_classify,
    preprocess_microarray,
    scaled_coefficients,
    standardize_samples,
    wilcoxon_rank_genes,
)
from l2boost.services.design import exact_mse, standardize
from l2boost.services.greedy_theory import temlyakov_bound, verify_bound, weak_greedy
from l2boost.services.model_selection import (
    aicc,
    hat_trace_path,
    hat_update,
    kfold_split,
    oracle_stop,
    setting_oracle,
    select_m,
    stop_aic_bernoulli,
    stop_aicc,
)
from l2boost.services.simulation_models import (
    draw_dataset,
    make_decaying_model,
    make_dense_model,
    make_three_effect_model,
    solve_kappa,
)

__all__ = [
    "forward_select_aic",
    "lasso_cd",
    "lasso_cv",
    "lasso_grid_mse",
    "lasso_oracle",
    "lasso_ratios",
    "ols_fit",
    "ridge_cv",
    "ridge_fit",
    "ridge_oracle",
    "parse_setting",
    "run_benchmark",
    "boost_fit",
    "coefficients_at",
    "mse_curve",
    "predict",
    "staged_predict",
    "cv_misclassification",
    "excess_risk_trend",
    "plugin_classify",
    "preprocess_microarray",
    "scaled_coefficients",
    "standardize_samples",
    "wilcoxon_rank_genes",
    "exact_mse",
    "standardize",
    "temlyakov_bound",
    "verify_bound",
    "weak_greedy",
    "aicc",
    "hat_trace_path",
    "hat_update",
    "kfold_split",
    "oracle_stop",
    "setting_oracle",
    "select_m",
    "stop_aic_bernoulli",
    "stop_aicc",
    "draw_dataset",
    "make_decaying_model",
    "make_dense_model",
    "make_three_effect_model",
    "solve_kappa",
]
