"""Tail asymptotics for the supremum of a self-similar Gaussian process
with polynomial trend over finite and infinite horizons.

For X with index H, variance t^(2H), drift c t^beta (beta > H), the
quantities below describe psi_T(u) = P(sup_{[0,T]} X(t) - c t^beta > u) as
u grows:

* the variance-ratio peak location t0 and the curvature constants A, B;
* the prefactor function D_{c0}(y) whose branch depends on
  Q = lim_{t->0} t / K^2(t) with K(t) = kK t^(alpha/2);
* the infinite-horizon prefactor R(u) and tail psi_inf(u);
* the finite-horizon tail, which under short horizons (T_u / u^(1/beta) ->
  s0 < t0) is D_{c0}(v) v^{-1} exp(-v^2/2) with v = (u + c T^beta) / T^H,
  and under critical horizons is psi_inf(u) Phi(x).

All expressions are leading-order asymptotics, not bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import ndtr

from .constants import EstimatorParams, cached_pickands
from .errors import DomainError, ScenarioError
from .model import ModelSpec

__all__ = ["ModelConstants", "model_constants", "q_limit", "k_inverse",
           "tail_prefactor", "infinite_horizon_prefactor",
           "tail_prob_infinite", "tail_prob_finite"]

SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class ModelConstants:
    """Peak constants of u^(-1) sup-variance analysis for one drift value.

    t0:      argmax of t^H / (1 + c t^beta), rescaled peak location.
    A:       peak height t0^H / (1 + c t0^beta).
    B:       curvature scale of the peak.
    tau:     tail exponent 2 (1 - H/beta).
    ttilde0: horizon-side image of t0, (H / (c beta))^(1/beta).
    """

    t0: float
    A: float
    B: float
    tau: float
    ttilde0: float
    c: float

    def __post_init__(self):
        if not (self.t0 > 0 and self.A > 0 and self.B > 0):
            raise DomainError("degenerate model constants")
        if not 0.0 < self.tau < 2.0:
            raise DomainError("tau must lie in (0, 2)")
        if not self.ttilde0 < self.t0:
            raise DomainError("ttilde0 must be smaller than t0")


def model_constants(H: float, c: float, beta: float) -> ModelConstants:
    """Closed-form constants t0, A, B, tau, ttilde0 for drift c t^beta."""
    if not (0.0 < H < beta):
        raise DomainError("need 0 < H < beta")
    if not c > 0:
        raise DomainError("drift must be positive")
    base = H / (c * (beta - H))
    t0 = base ** (1.0 / beta)
    A = t0 ** H / (1.0 + c * t0 ** beta)
    B = base ** (-(H + 2.0) / beta) * H * beta
    tau = 2.0 * (1.0 - H / beta)
    ttilde0 = (H / (c * beta)) ** (1.0 / beta)
    return ModelConstants(t0, A, B, tau, ttilde0, c)


def q_limit(model: ModelSpec) -> float:
    """Q = lim_{t->0} t / K^2(t) for the power kernel K(t) = kK t^(alpha/2).

    Exactly 0 for alpha < 1, 1/kK^2 for alpha = 1, infinity for alpha > 1.
    """
    if model.alpha < 1.0:
        return 0.0
    if model.alpha == 1.0:
        return 1.0 / model.kK ** 2
    return math.inf


def k_inverse(y: float, model: ModelSpec) -> float:
    """Exact inverse (y / kK)^(2/alpha) of the power kernel."""
    if y <= 0:
        raise DomainError("k_inverse needs a positive argument")
    return (y / model.kK) ** (2.0 / model.alpha)


def tail_prefactor(y: float, c0: float, model: ModelSpec,
                   params: EstimatorParams | None = None) -> float:
    """The prefactor D_{c0}(y) of the standardized sup tail.

    Branches on Q: for Q = 0 the Pickands constant of order alpha enters
    (Monte Carlo, cached); for finite positive Q (alpha = 1) the Piterbarg
    constant with damping 2 (H - c0 beta) Q enters through its closed form
    1 + 1/d; for Q infinite the prefactor is the plain Gaussian 1/sqrt(2 pi).
    """
    if y <= 0:
        raise DomainError("the prefactor argument must be positive")
    margin = model.H - c0 * model.beta
    if margin <= 0:
        raise DomainError("need c0 < H/beta for a nondegenerate prefactor")
    q = q_limit(model)
    if math.isinf(q):
        return 1.0 / SQRT_2PI
    if q > 0.0:
        d = 2.0 * margin * q  # alpha = 1 here, so P_1^d = 1 + 1/d is exact
        return (1.0 + 1.0 / d) / SQRT_2PI
    h_alpha = cached_pickands(model.alpha, params).value
    scale = 2.0 ** (1.0 / model.alpha) * SQRT_2PI * margin
    return h_alpha / scale / (y ** 2 * k_inverse(1.0 / y, model))


def _single_drift(model: ModelSpec) -> float:
    if not model.homogeneous:
        raise DomainError("this tail quantity is defined for a single drift")
    return model.drift.smallest


def infinite_horizon_prefactor(u: float, model: ModelSpec,
                               params: EstimatorParams | None = None) -> float:
    """R(u), the slowly varying prefactor of the infinite-horizon tail."""
    if u <= 0:
        raise DomainError("u must be positive")
    c = _single_drift(model)
    mc = model_constants(model.H, c, model.beta)
    alpha = model.alpha
    if alpha == 1.0:
        h_alpha = 1.0
    else:
        h_alpha = cached_pickands(alpha, params).value
    lead = mc.A ** (1.5 - 2.0 / alpha) * h_alpha / (
        2.0 ** (1.0 / alpha) * math.sqrt(mc.B) * mc.t0)
    hb = model.H / model.beta
    return lead * u ** (2.0 * hb - 2.0) / k_inverse(u ** (hb - 1.0), model)


def tail_prob_infinite(u: float, model: ModelSpec,
                       params: EstimatorParams | None = None) -> float:
    """Leading-order P(sup_{t>=0} X(t) - c t^beta > u)."""
    c = _single_drift(model)
    mc = model_constants(model.H, c, model.beta)
    r = infinite_horizon_prefactor(u, model, params)
    return r * math.exp(-u ** mc.tau / (2.0 * mc.A ** 2))


def tail_prob_finite(u: float, tu: float, model: ModelSpec,
                     s0: float | None = None, x: float | None = None,
                     params: EstimatorParams | None = None) -> float:
    """Leading-order P(sup_{[0,Tu]} X(t) - c t^beta > u).

    The horizon regime must be identified by the caller: pass ``s0`` (the
    limit of Tu / u^(1/beta), in [0, t0)) for short horizons, or ``x`` (the
    critical-window deviation, possibly infinite) for long ones.  With
    neither given, a fixed horizon is assumed (s0 = 0).
    """
    if u <= 0 or tu <= 0:
        raise DomainError("u and Tu must be positive")
    c = _single_drift(model)
    mc = model_constants(model.H, c, model.beta)
    if x is not None:
        if s0 is not None:
            raise DomainError("give either s0 or x, not both")
        if math.isinf(x) and x < 0:
            raise DomainError("the deviation x must lie in (-inf, inf]")
        phi = 1.0 if math.isinf(x) else float(ndtr(x))
        return tail_prob_infinite(u, model, params) * phi
    s0 = 0.0 if s0 is None else float(s0)
    if not 0.0 <= s0 < mc.t0:
        raise ScenarioError(
            f"s0 = {s0} is outside [0, t0 = {mc.t0}); use the critical-window "
            f"deviation x for horizons at or beyond the peak")
    c0 = c * s0 ** model.beta / (1.0 + c * s0 ** model.beta)
    v = (u + c * tu ** model.beta) / tu ** model.H
    return tail_prefactor(v, c0, model, params) / v * math.exp(-0.5 * v * v)
