"""Domain models for l2boost."""

from l2boost.models.boosting import BaseFit, BoostPath, HatState, SettingOracle, StoppingResult
from l2boost.models.classification import CvResult, GeneRanking, RiskPoint, ScaledCoefficient
from l2boost.models.configs import BoostConfig, CvScheme, LassoConfig, RidgeConfig
from l2boost.models.dataset import Dataset, ExpressionMatrix, SparseCoefficients, StandardizedDesign
from l2boost.models.enums import (
    Covariance,
    OutputFormat,
    ResponseCoding,
    Selector,
    StoppingRule,
    Tuning,
    Variant,
)
from l2boost.models.greedy import FiniteDictionary, GreedyTrace
from l2boost.models.simulation import (
    BenchmarkCell,
    BenchmarkReport,
    ReplicationRecord,
    Setting,
    SimulationModel,
)

__all__ = [
    "BaseFit",
    "BoostPath",
    "HatState",
    "SettingOracle",
    "StoppingResult",
    "CvResult",
    "GeneRanking",
    "RiskPoint",
    "ScaledCoefficient",
    "BoostConfig",
    "CvScheme",
    "LassoConfig",
    "RidgeConfig",
    "Dataset",
    "ExpressionMatrix",
    "SparseCoefficients",
    "StandardizedDesign",
    "Covariance",
    "OutputFormat",
    "ResponseCoding",
    "Selector",
    "StoppingRule",
    "Tuning",
    "Variant",
    "FiniteDictionary",
    "GreedyTrace",
    "BenchmarkCell",
    "BenchmarkReport",
    "ReplicationRecord",
    "Setting",
    "SimulationModel",
]
