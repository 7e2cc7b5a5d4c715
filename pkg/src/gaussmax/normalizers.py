"""Centering and scaling sequences for the maxima.

Under short and intermediate horizons (S2, S3) the Gumbel normalizers are

    a_n = T_n^H / sqrt(2 log n),
    b_n = T_n^H ( sqrt(2 log n)
          + log f_n(T_n^H sqrt(2 log n) - c T_n^beta) / sqrt(2 log n) )
          - c T_n^beta,

    f_n(w) = D_{c stilde0^beta}(v) / v,  v = (w + c T_n^beta) / T_n^H,

with stilde0 = 0 under S2.  Under long horizons (S4, S5; x0 = inf for S5)

    d_n(x0) = (2 A^2 log n)^(1/tau)
              ( 1 + log( R((2 A^2 log n)^(1/tau)) Phi(x0) ) / (tau log n) ),
    e_n     = (2 A^2 log n)^(1/tau) / (tau log n),

and for the unit horizon the centering is

    mu_n = sqrt(2 log n) + log( D_0(L) / L ) / L,  L = sqrt(2 log n).

Inhomogeneous drifts reuse the same sequences built from the smallest drift;
the variant prefactor f_n(w, c_j) only replaces the drift inside the ratio v.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import ndtr

from .asymptotics import (infinite_horizon_prefactor, model_constants,
                          tail_prefactor)
from .constants import EstimatorParams
from .errors import DomainError, ScenarioError
from .horizons import (HorizonFamily, ScenarioLabel, classify_scenario)
from .model import ModelSpec

__all__ = ["NormalizerSet", "level_prefactor", "gumbel_normalizers",
           "long_horizon_normalizers", "unit_horizon_center",
           "smooth_transition"]


@dataclass(frozen=True)
class NormalizerSet:
    """A (center, scale) pair together with the branch that produced it."""

    center: float
    scale: float
    kind: str

    def __post_init__(self):
        if self.kind != "identity" and not self.scale > 0:
            raise DomainError("scale must be positive")

    def apply(self, x):
        return (x - self.center) / self.scale


def _stilde0(scenario: ScenarioLabel) -> float:
    if scenario.scenario == "S2":
        return 0.0
    if scenario.scenario == "S3":
        return scenario.stilde0
    raise ScenarioError(
        f"the Gumbel normalizers are defined under S2 and S3, not "
        f"{scenario.scenario}")


def level_prefactor(w: float, n, model: ModelSpec, family: HorizonFamily,
                    drift_value: float | None = None,
                    scenario: ScenarioLabel | None = None,
                    params: EstimatorParams | None = None) -> float:
    """f_n(w): the tail prefactor at exceedance level w over horizon T_n.

    ``drift_value`` defaults to the smallest drift; passing another drift
    from the set gives the inhomogeneous variant (it changes only the
    standardized level v, not the branch constant).
    """
    if w <= 0:
        raise DomainError("the level w must be positive")
    sc = scenario or classify_scenario(family, model)
    s_tilde = _stilde0(sc)
    c = model.drift.smallest
    cj = c if drift_value is None else float(drift_value)
    T = family.value(n, model)
    v = (w + cj * T ** model.beta) / T ** model.H
    c0 = c * s_tilde ** model.beta
    return tail_prefactor(v, c0, model, params) / v


def gumbel_normalizers(n, model: ModelSpec, family: HorizonFamily,
                       scenario: ScenarioLabel | None = None,
                       params: EstimatorParams | None = None) -> NormalizerSet:
    """(b_n, a_n) for scenarios S2 and S3."""
    if n < 3:
        raise DomainError("need n >= 3")
    sc = scenario or classify_scenario(family, model)
    _stilde0(sc)  # scenario gate
    c = model.drift.smallest
    T = family.value(n, model)
    L = math.sqrt(2.0 * math.log(n))
    th = T ** model.H
    trend = c * T ** model.beta
    w = th * L - trend
    if w <= 0:
        raise DomainError(
            "the centering level T^H sqrt(2 log n) - c T^beta is not yet "
            "positive at this n; increase n")
    f = level_prefactor(w, n, model, family, scenario=sc, params=params)
    center = th * (L + math.log(f) / L) - trend
    return NormalizerSet(center, th / L, "ab")


def long_horizon_normalizers(n, x0: float, model: ModelSpec,
                             params: EstimatorParams | None = None
                             ) -> NormalizerSet:
    """(d_n(x0), e_n) for scenarios S4 and S5 (use x0 = inf under S5)."""
    if n < 3:
        raise DomainError("need n >= 3")
    if math.isinf(x0) and x0 < 0:
        raise DomainError("x0 must lie in (-inf, inf]")
    mc = model_constants(model.H, model.drift.smallest, model.beta)
    logn = math.log(n)
    base = (2.0 * mc.A ** 2 * logn) ** (1.0 / mc.tau)
    r = infinite_horizon_prefactor(base, model, params)
    phi = 1.0 if math.isinf(x0) else float(ndtr(x0))
    if phi <= 0.0:
        raise DomainError("Phi(x0) underflowed to zero")
    center = base * (1.0 + math.log(r * phi) / (mc.tau * logn))
    return NormalizerSet(center, base / (mc.tau * logn), "de")


def unit_horizon_center(n, model: ModelSpec,
                        params: EstimatorParams | None = None) -> float:
    """mu_n, the centering for maxima of unit-horizon suprema."""
    if n < 3:
        raise DomainError("need n >= 3")
    L = math.sqrt(2.0 * math.log(n))
    prefactor = tail_prefactor(L, 0.0, model, params) / L
    return L + math.log(prefactor) / L


def smooth_transition(n, model: ModelSpec, family: HorizonFamily,
                      params: EstimatorParams | None = None):
    """Diagnostics of the hand-over from (b_n, a_n) to (d_n(x0), e_n) at S4.

    Returns (a_n / e_n, (b_n - d_n(x0)) / d_n(x0)).  Exactly on the S4
    boundary the log-correction of b_n degenerates (the prefactor branch
    constant c0 reaches H/beta), so b_n enters through its leading part
    T_n^H sqrt(2 log n) - c T_n^beta; both diagnostics still expose the
    advertised convergence, to 1 and to 0 respectively.
    """
    sc = classify_scenario(family, model)
    if sc.scenario != "S4":
        raise ScenarioError(
            f"the smooth transition is an S4 diagnostic, got {sc.scenario}")
    c = model.drift.smallest
    T = family.value(n, model)
    L = math.sqrt(2.0 * math.log(n))
    b_lead = T ** model.H * L - c * T ** model.beta
    a_n = T ** model.H / L
    de = long_horizon_normalizers(n, sc.x0, model, params)
    return a_n / de.scale, (b_lead - de.center) / de.center
