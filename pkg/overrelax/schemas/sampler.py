# overrelax/schemas/sampler.py
from enum import Enum
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class OrderedImpl(str, Enum):
    DIRECT = "direct"
    CDF = "cdf"


class SamplerBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    @property
    def label(self) -> str:
        raise NotImplementedError


class GibbsSpec(SamplerBase):
    method: Literal["gibbs"] = "gibbs"

    @property
    def label(self) -> str:
        return "gibbs"


class AdlerSpec(SamplerBase):
    method: Literal["adler"] = "adler"
    adler_alpha: float

    @field_validator("adler_alpha")
    @classmethod
    def validate_alpha(cls, v: float) -> float:
        if not -1.0 <= v <= 1.0:
            raise ValueError(f"Adler's method requires −1 ≤ α ≤ +1, got {v}")
        return v

    @property
    def label(self) -> str:
        return f"adler{self.adler_alpha:+g}"


class OrderedOverSpec(SamplerBase):
    method: Literal["ordered-over"] = "ordered-over"
    k: int = Field(ge=1)
    impl: OrderedImpl = OrderedImpl.CDF

    @property
    def label(self) -> str:
        return f"over-{self.impl.value}-k{self.k}"


class OrderedUnderSpec(SamplerBase):
    method: Literal["ordered-under"] = "ordered-under"
    k: int = Field(ge=1)

    @property
    def label(self) -> str:
        return f"under-k{self.k}"


SamplerSpec = Annotated[
    Union[GibbsSpec, AdlerSpec, OrderedOverSpec, OrderedUnderSpec],
    Field(discriminator="method"),
]


class UpdateAudit(BaseModel):
    """What one kernel application did; only recorded when auditing is on"""

    iteration: Optional[int] = None
    component: int
    k: Optional[int] = Field(default=None, ge=1)
    u: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    r: Optional[int] = Field(default=None, ge=0)
    v: Optional[float] = None
    u_prime: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    noise_n: Optional[float] = None
    chosen_index: Optional[int] = None
    rejected: bool = False
    value: Optional[float] = None

    @model_validator(mode="after")
    def validate_rank(self) -> "UpdateAudit":
        if self.r is not None and (self.k is None or self.r > self.k):
            raise ValueError(f"rank r={self.r} needs 0 <= r <= K (K={self.k})")
        return self
