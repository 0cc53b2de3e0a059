"""Pydantic run configurations for the CLI commands."""

from pathlib import Path
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from l2boost.config import settings
from l2boost.models.configs import BoostConfig
from l2boost.models.enums import OutputFormat, ResponseCoding, Selector, StoppingRule, Variant
from l2boost.services.benchmark import METHODS


class RunConfig(BaseModel):
    """
    Fields shared by every command.

    Unknown keys are rejected so a typo in a config file fails loudly.
    """
    model_config = ConfigDict(extra="forbid")

    command: str
    seed: int = Field(0, ge=0, description="Base seed")
    output_dir: Path = Field(default_factory=lambda: Path(settings.OUTPUT_DIR))
    threads: int = Field(default_factory=lambda: settings.THREADS, ge=1)
    nu: float = Field(0.1, gt=0.0, le=1.0, description="Step size")
    m_max: int = Field(5000, ge=1, description="Boosting iterations")

    def boost_config(self, **extra) -> BoostConfig:
        return BoostConfig(nu=self.nu, m_max=self.m_max, **extra)

    def header(self) -> Dict[str, str]:
        """Provenance lines for result files: version, RNG and every config value."""
        header = {
            "version": settings.VERSION,
            "rng": settings.RNG_ALGORITHM,
        }
        for key, value in sorted(self.model_dump(mode="json").items()):
            header[key] = ",".join(map(str, value)) if isinstance(value, list) else str(value)
        return header


class FitConfig(RunConfig):
    command: Literal["fit"] = "fit"
    input: Path
    response: str = "y"
    stopping: StoppingRule = StoppingRule.AICC
    variant: Variant = Variant.L2BOOST
    m_fixed: Optional[int] = Field(None, ge=0, description="Iteration count for fixed stopping")

    @field_validator("stopping")
    @classmethod
    def validate_stopping(cls, v):
        """Oracle stopping needs a known truth and is only available in simulations."""
        if v is StoppingRule.ORACLE:
            raise ValueError("oracle stopping is only available in simulate")
        return v


class SimulateConfig(RunConfig):
    command: Literal["simulate"] = "simulate"
    output_format: OutputFormat = OutputFormat.MARKDOWN
    settings: List[str] = Field(default_factory=lambda: ["low-high"], min_length=1)
    methods: List[str] = Field(
        default_factory=lambda: ["l2boost", "l2boost*", "lasso", "lasso*", "fwd.var.sel", "ridge", "ridge*", "ols"],
        min_length=1,
    )
    reps: int = Field(50, ge=1)

    @field_validator("methods")
    @classmethod
    def validate_methods(cls, v):
        unknown = [m for m in v if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods: {', '.join(unknown)}")
        return v


class ClassifyConfig(RunConfig):
    command: Literal["classify"] = "classify"
    expression: Optional[Path] = None
    labels: str = "label"
    repeats: int = Field(50, ge=1)
    train_fraction: float = Field(2.0 / 3.0, gt=0.0, lt=1.0)
    coding: ResponseCoding = ResponseCoding.ZERO_ONE
    preprocess: bool = True
    risk_trend: bool = False
    risk_sizes: List[int] = Field(default_factory=lambda: [50, 200, 800], min_length=1)

    @model_validator(mode="after")
    def validate_input(self):
        if self.expression is None and not self.risk_trend:
            raise ValueError("expression is required unless risk_trend is set")
        if any(n < 4 for n in self.risk_sizes):
            raise ValueError("risk_sizes entries must be at least 4")
        return self


class GreedyCheckConfig(RunConfig):
    command: Literal["greedy-check"] = "greedy-check"
    nu: float = Field(1.0, gt=0.0, le=1.0)
    instances: int = Field(100, ge=0)
    b: float = Field(1.0, gt=0.0, le=1.0, description="Weakness parameter")
    steps: int = Field(200, ge=0)
    selector: Selector = Selector.EXACT_MAX
    dim: int = Field(40, ge=1, description="Dimension of the ambient space")
    size: int = Field(60, ge=1, description="Number of dictionary elements")
