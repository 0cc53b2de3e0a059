"""Enumerations shared by models, services and the CLI."""

from enum import Enum


class Variant(str, Enum):
    L2BOOST = "l2boost"
    FSLR = "fslr"


class StoppingRule(str, Enum):
    AICC = "aicc"
    AIC_BERNOULLI = "aic-bernoulli"
    ORACLE = "oracle"
    FIXED = "fixed"


class Tuning(str, Enum):
    CV10 = "cv10"
    ORACLE = "oracle"


class Covariance(str, Enum):
    IDENTITY = "identity"
    BLOCK = "banded"


class Selector(str, Enum):
    EXACT_MAX = "exact-max"
    B_WEAK_RANDOM = "b-weak-random"


class ResponseCoding(str, Enum):
    ZERO_ONE = "zero-one"
    CENTERED = "centered"


class OutputFormat(str, Enum):
    CSV = "csv"
    MARKDOWN = "markdown"
