"""Extreme-value limits for maxima of suprema of dependent self-similar
Gaussian processes with polynomial trend.

The package provides the analytic side (tail asymptotics, Pickands and
Piterbarg constants, horizon-scenario classification, normalizing
sequences, limit-law prediction) and a reproducible Monte Carlo engine that
verifies the predicted limits empirically.
"""

__version__ = "0.1.0"

from .errors import (BudgetError, ClassificationError, DomainError,
                     GaussmaxError, ScenarioError, ValidationError)
from .model import DriftSet, ModelSpec, brownian_model, validate_model
from .synthesis import (Grid, Path, assemble_model_paths, fbm_cov,
                        path_supremum, sample_fbm)
from .constants import (ConstantEstimate, EstimatorParams, pickands_constant,
                        piterbarg_constant)
from .asymptotics import (ModelConstants, infinite_horizon_prefactor,
                          k_inverse, model_constants, q_limit,
                          tail_prefactor, tail_prob_finite,
                          tail_prob_infinite)
from .horizons import (ConstantFamily, DLabel, ExplicitFamily, HorizonFamily,
                       PowerLogFamily, S4CalibratedFamily, ScenarioLabel,
                       SubcaseLabel, UConstant, UDeviation, UProportional,
                       classify_scenario, classify_subcase,
                       classify_threshold)
from .normalizers import (NormalizerSet, gumbel_normalizers, level_prefactor,
                          long_horizon_normalizers, smooth_transition,
                          unit_horizon_center)
from .limits import (Degenerate, Gumbel, GumbelNormalMix, NormalizerRecipe,
                     StdNormal, gumbel_shift, limit_cdf, limit_sampler,
                     predict_limit)
from .mc import (GofReport, SimConfig, SimResult, convergence_sweep, gof,
                 independent_maxima, simulate_maxima)
