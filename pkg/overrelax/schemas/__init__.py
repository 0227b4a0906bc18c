from .sampler import (
    AdlerSpec, GibbsSpec, OrderedImpl, OrderedOverSpec, OrderedUnderSpec, SamplerSpec, UpdateAudit,
)
from .trace import ChainTrace, sampler_spec_adapter
from .diagnostics import AcfReport
from .experiment import ExperimentConfig, ModelName, TruncationRule
