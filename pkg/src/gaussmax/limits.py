"""Limit laws of the normalized maxima and the composite predictor.

Every non-degenerate limit is Gumbel, standard Normal, or an independent
sum of the two:

    Gumbel(s):            P(L <= x) = exp(-exp(-(x - s)))
    StdNormal:            Phi(x)
    GumbelNormalMix(c,s): law of  Gumbel(s) + c * N(0,1)

The shift s encodes the inhomogeneous drift correction: log p1 when only
the smallest drift survives in the limit, or
log( p1 + sum_{j>=2} p_j exp(-(c_j - c) q1) ) in the balanced growth regime
q1 = lim T_n^(beta-H) sqrt(2 log n) in (0, inf).

``predict_limit`` maps (model, family) to the exact pairing of normalizer
recipe and limit law asserted by the limit theorems, including the
independent-model route used when sigma0 = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate
from scipy.special import ndtr

from .constants import EstimatorParams
from .errors import DomainError
from .horizons import (HorizonFamily, ScenarioLabel, SubcaseLabel,
                       classify_scenario, classify_subcase)
from .model import ModelSpec
from .normalizers import (NormalizerSet, gumbel_normalizers,
                          long_horizon_normalizers)
from .synthesis import substream

__all__ = ["Degenerate", "Gumbel", "StdNormal", "GumbelNormalMix",
           "limit_cdf", "limit_sampler", "gumbel_shift", "NormalizerRecipe",
           "predict_limit"]

_Z_CUT = 10.0


@dataclass(frozen=True)
class Degenerate:
    point: float
    variant = "degenerate"

    def describe(self):
        return {"variant": self.variant, "point": self.point}


@dataclass(frozen=True)
class Gumbel:
    shift: float = 0.0
    variant = "gumbel"

    def describe(self):
        return {"variant": self.variant, "shift": self.shift}


@dataclass(frozen=True)
class StdNormal:
    variant = "normal"

    def describe(self):
        return {"variant": self.variant}


@dataclass(frozen=True)
class GumbelNormalMix:
    coef: float
    shift: float = 0.0
    variant = "gumbel-normal"

    def __post_init__(self):
        if not self.coef > 0:
            raise DomainError("the mixture coefficient must be positive")

    def describe(self):
        return {"variant": self.variant, "coef": self.coef,
                "shift": self.shift}


def _mix_cdf_one(x: float, coef: float, shift: float) -> float:
    # integrate the Gumbel CDF against the Gaussian component; the Gaussian
    # tail beyond +-_Z_CUT contributes at most Phi(-10) ~ 7.6e-24
    val, _ = integrate.quad(
        lambda z: math.exp(-math.exp(-(x - shift - coef * z)))
        * math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi),
        -_Z_CUT, _Z_CUT, epsabs=1e-12, epsrel=1e-11, limit=200)
    return val + float(ndtr(-_Z_CUT))


def limit_cdf(law, x):
    """CDF of a limit law, vectorized over x.

    The mixture CDF is evaluated by adaptive quadrature with absolute error
    below 1e-10.
    """
    xs = np.asarray(x, dtype=float)
    if isinstance(law, Degenerate):
        out = (xs >= law.point).astype(float)
    elif isinstance(law, Gumbel):
        out = np.exp(-np.exp(-(xs - law.shift)))
    elif isinstance(law, StdNormal):
        out = ndtr(xs)
    elif isinstance(law, GumbelNormalMix):
        out = np.vectorize(
            lambda v: _mix_cdf_one(v, law.coef, law.shift))(xs).astype(float)
    else:
        raise DomainError(f"unknown limit law {law!r}")
    return out if out.ndim else float(out)


def limit_sampler(law, seed, m: int) -> np.ndarray:
    """m i.i.d. draws from a limit law, deterministic given the seed."""
    if m < 1:
        raise DomainError("need m >= 1")
    rng = substream(seed)
    if isinstance(law, Degenerate):
        return np.full(m, law.point)
    if isinstance(law, Gumbel):
        return law.shift + rng.gumbel(size=m)
    if isinstance(law, StdNormal):
        return rng.standard_normal(m)
    if isinstance(law, GumbelNormalMix):
        return law.shift + rng.gumbel(size=m) \
            + law.coef * rng.standard_normal(m)
    raise DomainError(f"unknown limit law {law!r}")


def gumbel_shift(model: ModelSpec, scenario: ScenarioLabel,
                 subcase: SubcaseLabel) -> float:
    """Shift of the Gumbel component induced by an inhomogeneous drift set."""
    if model.homogeneous:
        return 0.0
    p = model.drift.proportions
    log_p1 = math.log(p[0])
    if scenario.scenario != "S2":
        return log_p1
    q1 = subcase.q1
    if q1 is None:
        raise DomainError("inhomogeneous S2 requires the q1 diagnostic")
    if q1 == 0.0:
        return 0.0
    if math.isinf(q1):
        return log_p1
    c = model.drift.smallest
    weight = p[0] + sum(
        pj * math.exp(-(cj - c) * q1)
        for cj, pj in zip(model.drift.values[1:], p[1:]))
    return math.log(weight)


@dataclass(frozen=True)
class NormalizerRecipe:
    """Which normalizing sequence to evaluate, deferred until an n is given.

    kinds: 'identity' (degenerate limit), 'ab' ((b_n, a_n)), 'ab-sigma'
    (center b_n, scale sigma0 T_n^H0), 'de' ((d_n(x0), e_n)), 'de-sigma'
    (center d_n(x0), scale sigma0 T_n^H0).
    """

    kind: str
    x0: Optional[float] = None

    def at(self, n, model: ModelSpec, family: HorizonFamily,
           params: EstimatorParams | None = None) -> NormalizerSet:
        if self.kind == "identity":
            return NormalizerSet(0.0, 1.0, "identity")
        if self.kind in ("ab", "ab-sigma"):
            ab = gumbel_normalizers(n, model, family, params=params)
            if self.kind == "ab":
                return ab
            scale = model.sigma0 * family.value(n, model) ** model.H0
            return NormalizerSet(ab.center, scale, "ab-sigma")
        if self.kind in ("de", "de-sigma"):
            de = long_horizon_normalizers(n, self.x0, model, params=params)
            if self.kind == "de":
                return de
            scale = model.sigma0 * family.value(n, model) ** model.H0
            return NormalizerSet(de.center, scale, "de-sigma")
        raise DomainError(f"unknown recipe kind {self.kind!r}")

    def describe(self):
        out = {"kind": self.kind}
        if self.x0 is not None:
            out["x0"] = self.x0
        return out


def predict_limit(model: ModelSpec, family: HorizonFamily):
    """The (normalizer recipe, limit law) pair asserted by the theorems.

    With sigma0 = 0 the maxima are those of an independent array and the
    limit is always Gumbel (possibly shifted) under S2-S5; with sigma0 > 0
    the sub-case decides between the Normal, Gumbel, and mixture branches.
    """
    sc = classify_scenario(family, model)
    if sc.scenario == "S1":
        return NormalizerRecipe("identity"), Degenerate(sc.kappa0)
    sub = classify_subcase(family, model, sc)
    shift = gumbel_shift(model, sc, sub)
    short = sc.scenario in ("S2", "S3")
    x0 = None if short else sc.x0
    plain = NormalizerRecipe("ab") if short else NormalizerRecipe("de", x0)
    if model.sigma0 == 0.0:
        return plain, Gumbel(shift)
    suffix = sub.case.split(".")[1]
    if suffix == "i":
        kind = "ab-sigma" if short else "de-sigma"
        return NormalizerRecipe(kind, x0), StdNormal()
    if suffix == "ii":
        return plain, Gumbel(shift)
    if short:
        coef = model.sigma0 / sub.q0
    else:
        coef = (model.sigma0 * model.drift.smallest * model.beta) / model.H
    return plain, GumbelNormalMix(coef, shift)


def law_from_dict(d: dict):
    v = d.get("variant")
    if v == "degenerate":
        return Degenerate(float(d["point"]))
    if v == "gumbel":
        return Gumbel(float(d.get("shift", 0.0)))
    if v == "normal":
        return StdNormal()
    if v == "gumbel-normal":
        return GumbelNormalMix(float(d["coef"]), float(d.get("shift", 0.0)))
    raise DomainError(f"unknown limit law variant {v!r}")
