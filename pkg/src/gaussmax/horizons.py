"""Horizon families and their classification into limit regimes.

The growth of the horizon T_n relative to sqrt(2 log n) decides which
normalizing sequences and limit law apply:

  S1  T_n^H sqrt(2 log n) -> kappa0 < inf        (degenerate limit)
  S2  ... -> inf and T_n^(1-H/beta) / (2 log n)^(1/(2 beta)) -> 0
  S3  the second ratio -> stilde0 in (0, ttilde0)
  S4  the second ratio -> ttilde0 with a finite deviation x0
  S5  the second ratio -> limit > ttilde0 (x0 = inf)

Threshold-dependent horizons T_u are classified analogously into D1-D3 by
the limits of T_u / u^(1/beta) and of the critical-window deviation.

Power-log families T_n = (lambda sqrt(2 log n))^gamma classify in closed
form through exponent comparisons.  Explicit sequences are probed at
n = 1e3, 1e6, 1e9, 1e12 and must show monotone stabilization of the
diagnostic ratios within 1%; a slowly converging sequence can defeat the
probe, which is the price of accepting black-box horizons.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .asymptotics import model_constants
from .errors import ClassificationError, DomainError, ValidationError
from .model import ModelSpec

__all__ = ["HorizonFamily", "PowerLogFamily", "ConstantFamily",
           "ExplicitFamily", "S4CalibratedFamily", "ScenarioLabel", "DLabel",
           "SubcaseLabel", "classify_scenario", "classify_subcase",
           "UConstant", "UProportional", "UDeviation", "classify_threshold",
           "family_from_dict", "family_to_dict"]

_EXP_TOL = 1e-12
_PROBES = (10 ** 3, 10 ** 6, 10 ** 9, 10 ** 12)


def _log_scale(n) -> float:
    return math.sqrt(2.0 * math.log(n))


# --- horizon families ------------------------------------------------------

class HorizonFamily:
    kind = "abstract"

    def value(self, n, model: ModelSpec) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class PowerLogFamily(HorizonFamily):
    """T_n = (lam * sqrt(2 log n))^gamma."""

    gamma: float
    lam: float
    kind = "power-log"

    def __post_init__(self):
        if not self.lam > 0:
            raise ValidationError("lambda must be positive")

    def value(self, n, model=None) -> float:
        return (self.lam * _log_scale(n)) ** self.gamma


@dataclass(frozen=True)
class ConstantFamily(HorizonFamily):
    T: float
    kind = "constant"

    def __post_init__(self):
        if not self.T > 0:
            raise ValidationError("T must be positive")

    def value(self, n, model=None) -> float:
        return self.T


@dataclass(frozen=True)
class ExplicitFamily(HorizonFamily):
    """Arbitrary positive sequence given as a callable n -> T_n."""

    fn: Callable[[float], float]
    kind = "explicit"

    def value(self, n, model=None) -> float:
        return float(self.fn(n))


@dataclass(frozen=True)
class S4CalibratedFamily(HorizonFamily):
    """The critical family sitting exactly on the S4 window:

    T_n = (ttilde0^beta sqrt(2 log n))^(1/(beta-H))
          + sqrt(A/B) x0 (2 A^2 log n)^((H+1-beta)/(2(beta-H))) + eps(n),

    with eps(n) = o((log n)^((H+1-beta)/(2(beta-H)))).
    """

    x0: float
    epsilon: Optional[Callable[[float], float]] = None
    kind = "s4-calibrated"

    def value(self, n, model: ModelSpec) -> float:
        mc = model_constants(model.H, model.drift.smallest, model.beta)
        bh = model.beta - model.H
        lead = (mc.ttilde0 ** model.beta * _log_scale(n)) ** (1.0 / bh)
        window = (2.0 * mc.A ** 2 * math.log(n)) ** (
            (model.H + 1.0 - model.beta) / (2.0 * bh))
        eps = self.epsilon(n) if self.epsilon is not None else 0.0
        return lead + math.sqrt(mc.A / mc.B) * self.x0 * window + eps


def family_to_dict(family: HorizonFamily) -> dict:
    if isinstance(family, PowerLogFamily):
        return {"kind": family.kind, "gamma": family.gamma,
                "lambda": family.lam}
    if isinstance(family, ConstantFamily):
        return {"kind": family.kind, "T": family.T}
    if isinstance(family, S4CalibratedFamily):
        return {"kind": family.kind, "x0": family.x0}
    raise ValidationError(f"family kind {family.kind!r} has no JSON form")


def family_from_dict(d: dict) -> HorizonFamily:
    kind = d.get("kind")
    if kind == "power-log":
        return PowerLogFamily(float(d["gamma"]), float(d["lambda"]))
    if kind == "constant":
        return ConstantFamily(float(d["T"]))
    if kind == "s4-calibrated":
        return S4CalibratedFamily(float(d["x0"]))
    raise ValidationError(f"unknown horizon family kind {kind!r}")


# --- labels ----------------------------------------------------------------

@dataclass(frozen=True)
class ScenarioLabel:
    scenario: str                     # S1..S5
    kappa0: Optional[float] = None    # S1
    stilde0: Optional[float] = None   # S3
    x0: Optional[float] = None        # S4 (finite) / S5 (inf)

    def to_dict(self) -> dict:
        out = {"scenario": self.scenario}
        for k in ("kappa0", "stilde0", "x0"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        return out


@dataclass(frozen=True)
class DLabel:
    regime: str                       # D1..D3
    s0: Optional[float] = None        # D2
    x: Optional[float] = None         # D3


@dataclass(frozen=True)
class SubcaseLabel:
    case: str                         # a, b.i..b.iii, c.i..c.iii, d.i..d.iii
    q0: Optional[float] = None        # sub-case iii under S2/S3
    q1: Optional[float] = None        # inhomogeneous growth diagnostic

    def __post_init__(self):
        if self.q0 is not None and not self.q0 > 0:
            raise DomainError("q0 must be positive")
        if self.q1 is not None and self.q1 < 0:
            raise DomainError("q1 must be nonnegative")

    def to_dict(self) -> dict:
        out = {"case": self.case}
        if self.q0 is not None:
            out["q0"] = self.q0
        if self.q1 is not None:
            out["q1"] = self.q1
        return out


# --- limit probing for explicit sequences ----------------------------------

def _probe_positive(values, what: str) -> float:
    """Limit of a positive diagnostic sequence sampled along _PROBES.

    Returns a finite limit, 0.0, or inf; raises ClassificationError when the
    samples neither stabilize nor move monotonically.
    """
    v = [float(x) for x in values]
    if any(x < 0 for x in v):
        raise ClassificationError(f"{what}: diagnostic went negative: {v}")
    rel = [abs(b - a) / max(abs(b), 1e-300) for a, b in zip(v, v[1:])]
    stabilizing = all(r2 <= r1 + 1e-9 for r1, r2 in zip(rel, rel[1:]))
    if stabilizing and rel[-1] <= 0.01:
        return v[-1]
    if all(b > a for a, b in zip(v, v[1:])):
        return math.inf
    if all(b < a for a, b in zip(v, v[1:])):
        return 0.0
    raise ClassificationError(
        f"{what}: diagnostic neither stabilizes nor is monotone: {v}")


def _probe_signed(values, what: str) -> float:
    v = [float(x) for x in values]
    scale = max(1.0, max(abs(x) for x in v))
    rel = [abs(b - a) / scale for a, b in zip(v, v[1:])]
    if all(r2 <= r1 + 1e-9 for r1, r2 in zip(rel, rel[1:])) and rel[-1] <= 0.01:
        return v[-1]
    if all(b > a for a, b in zip(v, v[1:])):
        return math.inf
    if all(b < a for a, b in zip(v, v[1:])):
        return -math.inf
    raise ClassificationError(
        f"{what}: deviation neither stabilizes nor is monotone: {v}")


# --- scenario classification ------------------------------------------------

def classify_scenario(family: HorizonFamily, model: ModelSpec
                      ) -> ScenarioLabel:
    """Assign the horizon family to exactly one of S1..S5."""
    H, beta = model.H, model.beta
    mc = model_constants(H, model.drift.smallest, beta)

    if isinstance(family, S4CalibratedFamily):
        return ScenarioLabel("S4", x0=family.x0)
    if isinstance(family, ConstantFamily):
        return ScenarioLabel("S2")
    if isinstance(family, PowerLogFamily):
        g, lam = family.gamma, family.lam
        e1 = g * H + 1.0                      # T^H sqrt(2 log n) ~ L^e1
        if e1 < -_EXP_TOL:
            return ScenarioLabel("S1", kappa0=0.0)
        if abs(e1) <= _EXP_TOL:
            return ScenarioLabel("S1", kappa0=lam ** (g * H))
        e2 = g * (1.0 - H / beta) - 1.0 / beta
        if e2 < -_EXP_TOL:
            return ScenarioLabel("S2")
        if e2 > _EXP_TOL:
            return ScenarioLabel("S5", x0=math.inf)
        s = lam ** (g * (1.0 - H / beta))     # = lam^(1/beta)
        if s < mc.ttilde0 * (1.0 - 1e-12):
            return ScenarioLabel("S3", stilde0=s)
        if s <= mc.ttilde0 * (1.0 + 1e-12):
            return ScenarioLabel("S4", x0=0.0)
        return ScenarioLabel("S5", x0=math.inf)

    # explicit sequence: probe the diagnostics
    ts = [family.value(n, model) for n in _PROBES]
    r1 = _probe_positive(
        [t ** H * _log_scale(n) for t, n in zip(ts, _PROBES)],
        "T^H sqrt(2 log n)")
    if not math.isinf(r1):
        return ScenarioLabel("S1", kappa0=r1)
    r2 = _probe_positive(
        [t ** (1.0 - H / beta) / _log_scale(n) ** (1.0 / beta)
         for t, n in zip(ts, _PROBES)],
        "T^(1-H/beta) / (2 log n)^(1/(2 beta))")
    if r2 == 0.0:
        return ScenarioLabel("S2")
    if math.isinf(r2) or r2 > mc.ttilde0 * (1.0 + 1e-9):
        return ScenarioLabel("S5", x0=math.inf)
    if r2 < mc.ttilde0 * (1.0 - 1e-9):
        return ScenarioLabel("S3", stilde0=r2)
    # boundary: resolve through the critical-window deviation
    bh = beta - H
    devs = []
    for t, n in zip(ts, _PROBES):
        lead = (mc.ttilde0 ** beta * _log_scale(n)) ** (1.0 / bh)
        window = math.sqrt(mc.A / mc.B) * (2.0 * mc.A ** 2 * math.log(n)) ** (
            (H + 1.0 - beta) / (2.0 * bh))
        devs.append((t - lead) / window)
    x0 = _probe_signed(devs, "critical-window deviation")
    if math.isinf(x0):
        if x0 > 0:
            return ScenarioLabel("S5", x0=math.inf)
        raise ClassificationError(
            "deviation diverges to -inf; no limit theory applies there")
    return ScenarioLabel("S4", x0=x0)


# --- sub-case classification -------------------------------------------------

def _r3_limit(family: HorizonFamily, model: ModelSpec):
    """lim T_n^(H-H0) / sqrt(2 log n): 0, inf, or the finite q0."""
    H, H0 = model.H, model.H0
    if isinstance(family, PowerLogFamily):
        e = family.gamma * (H - H0) - 1.0
        if e < -_EXP_TOL:
            return 0.0
        if e > _EXP_TOL:
            return math.inf
        return family.lam ** (family.gamma * (H - H0))
    if isinstance(family, ConstantFamily):
        return 0.0
    if isinstance(family, S4CalibratedFamily):
        # T_n grows polynomially in log n: the sign of 2H - H0 - beta decides
        diff = 2.0 * H - H0 - model.beta
        if diff < -_EXP_TOL:
            return 0.0
        if diff > _EXP_TOL:
            return math.inf
        mc = model_constants(H, model.drift.smallest, model.beta)
        return mc.ttilde0 ** model.beta
    ts = [family.value(n, model) for n in _PROBES]
    return _probe_positive(
        [t ** (H - H0) / _log_scale(n) for t, n in zip(ts, _PROBES)],
        "T^(H-H0) / sqrt(2 log n)")


def _q1_limit(family: HorizonFamily, model: ModelSpec):
    """lim T_n^(beta-H) sqrt(2 log n): 0, inf, or finite."""
    bh = model.beta - model.H
    if isinstance(family, PowerLogFamily):
        e = family.gamma * bh + 1.0
        if e < -_EXP_TOL:
            return 0.0
        if e > _EXP_TOL:
            return math.inf
        return family.lam ** (family.gamma * bh)
    if isinstance(family, (ConstantFamily, S4CalibratedFamily)):
        return math.inf
    ts = [family.value(n, model) for n in _PROBES]
    return _probe_positive(
        [t ** bh * _log_scale(n) for t, n in zip(ts, _PROBES)],
        "T^(beta-H) sqrt(2 log n)")


def classify_subcase(family: HorizonFamily, model: ModelSpec,
                     scenario: ScenarioLabel | None = None) -> SubcaseLabel:
    """Resolve the theorem sub-case within the matched scenario.

    Sub-case i is the Normal branch, ii the Gumbel branch, iii the mixture.
    Under S2 and S3 the split follows lim T_n^(H-H0)/sqrt(2 log n); under S4
    and S5 it follows the sign of 2H - H0 - beta.  For inhomogeneous models
    the growth diagnostic q1 = lim T_n^(beta-H) sqrt(2 log n) is attached,
    which selects the shifted-Gumbel variant under S2.
    """
    sc = scenario or classify_scenario(family, model)
    q1 = None if model.homogeneous else _q1_limit(family, model)
    if sc.scenario == "S1":
        return SubcaseLabel("a", q1=q1)
    if sc.scenario in ("S2", "S3"):
        letter = "b" if model.homogeneous or sc.scenario == "S2" else "c"
        r3 = _r3_limit(family, model)
        if r3 == 0.0:
            return SubcaseLabel(f"{letter}.i", q1=q1)
        if math.isinf(r3):
            return SubcaseLabel(f"{letter}.ii", q1=q1)
        return SubcaseLabel(f"{letter}.iii", q0=r3, q1=q1)
    letter = "c" if model.homogeneous else "d"
    diff = 2.0 * model.H - model.H0 - model.beta
    if diff < -_EXP_TOL:
        return SubcaseLabel(f"{letter}.i", q1=q1)
    if diff > _EXP_TOL:
        return SubcaseLabel(f"{letter}.ii", q1=q1)
    return SubcaseLabel(f"{letter}.iii", q1=q1)


# --- threshold-dependent horizons (D regimes) --------------------------------

class UFamily:
    kind = "abstract"


@dataclass(frozen=True)
class UConstant(UFamily):
    """T_u fixed: T_u / u^(1/beta) -> 0."""
    T: float
    kind = "u-constant"


@dataclass(frozen=True)
class UProportional(UFamily):
    """T_u = s * u^(1/beta)."""
    s: float
    kind = "u-proportional"


@dataclass(frozen=True)
class UDeviation(UFamily):
    """T_u = t0 u^(1/beta) + sqrt(A/B) x u^(H/beta + 1/beta - 1)."""
    x: float
    kind = "u-deviation"


def classify_threshold(ufamily: UFamily, model: ModelSpec) -> DLabel:
    """Classify a threshold-dependent horizon into D1, D2, or D3."""
    mc = model_constants(model.H, model.drift.smallest, model.beta)
    if isinstance(ufamily, UConstant):
        if not ufamily.T > 0:
            raise DomainError("T must be positive")
        return DLabel("D1")
    if isinstance(ufamily, UProportional):
        s = ufamily.s
        if not s > 0:
            raise DomainError("the proportionality s must be positive")
        if s < mc.t0 * (1.0 - 1e-12):
            return DLabel("D2", s0=s)
        if s <= mc.t0 * (1.0 + 1e-12):
            return DLabel("D3", x=0.0)
        return DLabel("D3", x=math.inf)
    if isinstance(ufamily, UDeviation):
        x = ufamily.x
        if math.isinf(x) and x < 0:
            raise DomainError("the deviation x must lie in (-inf, inf]")
        return DLabel("D3", x=x)
    raise ClassificationError(f"unknown threshold family {ufamily!r}")
