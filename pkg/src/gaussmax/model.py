"""Model description: dependent self-similar Gaussian processes with trend.

The object of study is

    M_n = max_{i<=n} sup_{t in [0,T_n]} ( X_i(t) + sigma0 * X(t) - c_i * t^beta )

where the X_i are i.i.d. centered self-similar Gaussian processes with index
H and variance t^(2H), X is an independent common process with index H0, and
the drift coefficients c_i take values in a finite set.  The sigma weight of
the X_i is fixed to 1.

Local stationarity of the standardized process is parameterized through
K(t) = kK * t^(alpha/2); only this pure power form is supported, which makes
the asymptotic inverse of K and the limit Q = lim t/K^2(t) exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ValidationError

__all__ = ["DriftSet", "ModelSpec", "validate_model", "drift_counts",
           "brownian_model"]


@dataclass(frozen=True)
class DriftSet:
    """Finite set of drift coefficients with their asymptotic proportions.

    ``values`` must be strictly increasing and positive; ``proportions``
    must sum to one with the first entry positive.  A single value is the
    homogeneous case.
    """

    values: tuple = ()
    proportions: tuple = ()

    def __init__(self, values, proportions=None):
        values = tuple(float(v) for v in values)
        if proportions is None:
            proportions = (1.0,) if len(values) == 1 else ()
        proportions = tuple(float(p) for p in proportions)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "proportions", proportions)

    @property
    def k(self) -> int:
        return len(self.values)

    @property
    def smallest(self) -> float:
        """The drift c = c_hat_1 used by all normalizing sequences."""
        return self.values[0]

    def problems(self):
        out = []
        if not self.values:
            out.append("drift values must be nonempty")
            return out
        if any(v <= 0 for v in self.values):
            out.append("drift values must be positive")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            out.append("drift values must be strictly increasing")
        if len(self.proportions) != len(self.values):
            out.append("proportions must match drift values in length")
            return out
        if any(not 0.0 <= p <= 1.0 for p in self.proportions):
            out.append("proportions must lie in [0, 1]")
        if abs(sum(self.proportions) - 1.0) > 1e-12:
            out.append("proportions must sum to 1")
        if self.proportions and not self.proportions[0] > 0.0:
            out.append("proportion of the smallest drift must be positive")
        return out


@dataclass(frozen=True)
class ModelSpec:
    """Full parameter set of the dependent Gaussian model."""

    H: float
    H0: float
    sigma0: float
    beta: float
    alpha: float
    kK: float = 1.0
    drift: DriftSet = field(default_factory=lambda: DriftSet((1.0,)))

    def problems(self):
        out = []
        if not 0.0 < self.H < 1.0:
            out.append("H must lie in (0, 1)")
        if not 0.0 < self.H0 < 1.0:
            out.append("H0 must lie in (0, 1)")
        if self.sigma0 < 0.0:
            out.append("sigma0 must be nonnegative")
        if not self.beta > max(self.H, self.H0):
            out.append("beta must exceed max(H, H0)")
        if not 0.0 < self.alpha <= 2.0:
            out.append("alpha must lie in (0, 2]")
        if not self.kK > 0.0:
            out.append("kK must be positive")
        out.extend(self.drift.problems())
        return out

    @property
    def homogeneous(self) -> bool:
        return self.drift.k == 1

    def with_sigma0(self, sigma0: float) -> "ModelSpec":
        return ModelSpec(self.H, self.H0, sigma0, self.beta, self.alpha,
                         self.kK, self.drift)

    def to_dict(self) -> dict:
        return {
            "H": self.H, "H0": self.H0, "sigma0": self.sigma0,
            "beta": self.beta, "alpha": self.alpha, "kK": self.kK,
            "drift": {"values": list(self.drift.values),
                      "proportions": list(self.drift.proportions)},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelSpec":
        drift = d.get("drift", {"values": [1.0], "proportions": [1.0]})
        spec = cls(
            H=float(d["H"]), H0=float(d["H0"]), sigma0=float(d["sigma0"]),
            beta=float(d["beta"]), alpha=float(d["alpha"]),
            kK=float(d.get("kK", 1.0)),
            drift=DriftSet(drift["values"], drift.get("proportions")),
        )
        return validate_model(spec)

    @classmethod
    def from_json(cls, text: str) -> "ModelSpec":
        return cls.from_dict(json.loads(text))


def validate_model(spec: ModelSpec) -> ModelSpec:
    """Return ``spec`` unchanged iff every parameter constraint holds.

    Raises :class:`ValidationError` naming each violated constraint.
    Validation is idempotent: a valid spec is returned as the same object.
    """
    problems = spec.problems()
    if problems:
        raise ValidationError(problems)
    return spec


def drift_counts(drift: DriftSet, n: int):
    """Realize the proportions p_j as integer counts m_j with sum n.

    m_j = round(p_j * n) for j >= 2; the remainder goes to j = 1 so that
    the smallest drift always keeps at least one process.
    """
    if n < 1:
        raise ValidationError("n must be at least 1")
    rest = [int(round(p * n)) for p in drift.proportions[1:]]
    m1 = n - sum(rest)
    if m1 < 1:
        raise ValidationError(
            "rounding left no process on the smallest drift; increase n")
    return [m1] + rest


def brownian_model(sigma0: float = 0.0, c: float = 1.0) -> ModelSpec:
    """Convenience constructor: Brownian motions with linear trend."""
    return validate_model(ModelSpec(H=0.5, H0=0.5, sigma0=sigma0, beta=1.0,
                                    alpha=1.0, kK=1.0, drift=DriftSet((c,))))
