"""Utility modules for l2boost."""

from l2boost.utils.linalg import lower_factor, quadratic_form, soft_threshold
from l2boost.utils.rng import make_rng

__all__ = [
    "lower_factor",
    "quadratic_form",
    "soft_threshold",
    "make_rng",
]
