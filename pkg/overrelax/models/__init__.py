from .distributions import Beta, Binomial, Gamma, Gaussian, Poisson, ScalarDistribution, Uniform
from .targets import (
    BivariateGaussianModel, ConditionalModel, FixedConditionalModel, MultiquadraticModel,
    bivariate_conditional, multiquadratic_conditional,
)
from .pump import (
    PumpDataset, PumpModel, init_pump_chain, pump_lambda_conditional, pump_tau_conditional,
)
