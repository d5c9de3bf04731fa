"""prabmix: Prabhakar / Mittag-Leffler functions via probabilistic mixtures.

Evaluates the three-parameter Mittag-Leffler (Prabhakar) function as a
gamma-weighted mixture of Riemann-Liouville fractional integrals of
one-sided stable densities, exposes the resulting four-parameter
distribution (density, moments, sampling, complete-monotonicity checks),
and cross-validates every quantity through independent computational
routes: series, mixture integral, and numeric Laplace inversion.
"""

from .distributions import (
    CmReport,
    InverseCdfSampler,
    MixtureLawR,
    PollardLaw,
    cm_check,
    gml_density,
    p_density,
    p_moment,
    p_sample,
    p_tilted_laplace,
    pollard_cdf,
    q_density,
)
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DegenerateLawError,
    DomainError,
    PrabmixError,
    RouteError,
    SamplingError,
)
from .fracint import RLKernel, rl_integral, rl_stable, rl_stable_standard
from .mixture import (
    BaseParams,
    GammaWeight,
    MixtureParams,
    RlStableTable,
    base_to_composite,
    mixture_eval,
    mixture_eval_special,
    theta_shift_residual,
)
from .mlf import (
    PrabhakarTriple,
    ml1,
    prabhakar_kernel,
    prabhakar_laplace_closed,
    prabhakar_series,
    prabhakar_via_inversion,
)
from .numerics import (
    DEFAULT_SPEC,
    ExponentialDecay,
    NumResult,
    PowerLawDecay,
    QuadSpec,
    integrate,
    integrate_semiinf,
    inverse_laplace,
    laplace_numeric,
    log_gamma,
)
from .stable import (
    LevyExponent,
    StableLaw,
    id_identity_residual,
    stable_cdf,
    stable_pdf,
    stable_pdf_standard,
    stable_sample,
    stable_sample_many,
    x_switch,
)

__version__ = "0.1.0"

__all__ = [
    "QuadSpec",
    "NumResult",
    "ExponentialDecay",
    "PowerLawDecay",
    "DEFAULT_SPEC",
    "log_gamma",
    "integrate",
    "integrate_semiinf",
    "laplace_numeric",
    "inverse_laplace",
    "StableLaw",
    "LevyExponent",
    "stable_pdf_standard",
    "stable_pdf",
    "stable_cdf",
    "stable_sample",
    "stable_sample_many",
    "id_identity_residual",
    "x_switch",
    "RLKernel",
    "rl_integral",
    "rl_stable_standard",
    "rl_stable",
    "PrabhakarTriple",
    "ml1",
    "prabhakar_series",
    "prabhakar_kernel",
    "prabhakar_laplace_closed",
    "prabhakar_via_inversion",
    "GammaWeight",
    "BaseParams",
    "MixtureParams",
    "base_to_composite",
    "RlStableTable",
    "mixture_eval",
    "mixture_eval_special",
    "theta_shift_residual",
    "MixtureLawR",
    "PollardLaw",
    "q_density",
    "p_density",
    "p_moment",
    "p_tilted_laplace",
    "pollard_cdf",
    "gml_density",
    "p_sample",
    "InverseCdfSampler",
    "cm_check",
    "CmReport",
    "PrabmixError",
    "DomainError",
    "DegenerateLawError",
    "ConvergenceError",
    "RouteError",
    "SamplingError",
    "ConsistencyError",
]
