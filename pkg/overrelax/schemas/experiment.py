# overrelax/schemas/experiment.py
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from overrelax.core.config import settings
from overrelax.schemas.sampler import AdlerSpec, GibbsSpec, SamplerSpec

ModelName = Literal["bivariate-gaussian", "multiquadratic", "pump"]
TruncationRule = Literal["geyer", "threshold"]


class ExperimentConfig(BaseModel):
    """Fully resolved description of one chain run"""

    model_config = ConfigDict(frozen=True, extra="forbid", protected_namespaces=())

    preset: Optional[str] = None
    label: Optional[str] = None

    # Target
    model: ModelName = "bivariate-gaussian"
    rho: float = 0.998
    p: int = Field(default=100, ge=1)
    gamma_shape: float = Field(default=20.0, gt=0)
    hyper_gamma: float = Field(default=0.1, gt=0)
    hyper_delta: float = Field(default=1.0, gt=0)
    beta_true: float = Field(default=0.2, gt=0)
    data: Optional[Path] = None

    # Sampler and run
    sampler: SamplerSpec = Field(default_factory=GibbsSpec)
    n_iter: int = Field(default=2000, ge=1)
    burn_in: int = Field(default=settings.GAUSSIAN_BURN_IN, ge=0)
    seed: int = Field(default=settings.DEFAULT_SEED, ge=0, lt=2**63)
    monitors: List[str] = Field(default_factory=lambda: ["x1", "x1sq"])
    out_dir: Path = Path(settings.OUTPUT_DIR)
    truncation_rule: TruncationRule = settings.DEFAULT_TRUNCATION_RULE
    baseline: bool = True
    audit: bool = False

    @model_validator(mode="before")
    @classmethod
    def default_burn_in(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("burn_in") is None:
            pump = data.get("model") == "pump"
            data = {**data, "burn_in": settings.PUMP_BURN_IN if pump else settings.GAUSSIAN_BURN_IN}
        return data

    @field_validator("rho")
    @classmethod
    def validate_rho(cls, v: float) -> float:
        if not -1.0 < v < 1.0:
            raise ValueError(f"Correlation must satisfy |rho| < 1, got {v}")
        return v

    @field_validator("monitors", mode="before")
    @classmethod
    def split_monitors(cls, v: Any) -> Any:
        if isinstance(v, str):
            return [item.strip() for item in v.split(",") if item.strip()]
        return v

    @field_validator("monitors")
    @classmethod
    def validate_monitors(cls, v: List[str]) -> List[str]:
        if not v:
            raise ValueError("At least one monitored function is required")
        if len(set(v)) != len(v):
            raise ValueError(f"Monitored functions must be unique, got {v}")
        return v

    @field_validator("data")
    @classmethod
    def validate_data(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None and not v.is_file():
            raise ValueError(f"Dataset file {v} does not exist")
        return v

    @model_validator(mode="after")
    def validate_run(self) -> "ExperimentConfig":
        if self.burn_in >= self.n_iter:
            raise ValueError(f"burn_in ({self.burn_in}) must be smaller than n_iter ({self.n_iter})")
        if self.model == "pump" and isinstance(self.sampler, AdlerSpec):
            raise ValueError("Adler's method needs Gaussian conditionals; the pump model's are gamma")
        if self.data is not None and self.model != "pump":
            raise ValueError("A dataset can only be supplied for the pump model")
        return self

    @property
    def run_label(self) -> str:
        return self.label or self.sampler.label

    def flat(self) -> Dict[str, Any]:
        """Flat key=value view used for metadata sidecars (excludes out_dir)"""
        pairs = self.model_dump(exclude={"sampler", "out_dir"}, exclude_none=True)
        pairs.update(self.sampler.model_dump())
        pairs["label"] = self.run_label
        return {key: pairs[key] for key in sorted(pairs)}
