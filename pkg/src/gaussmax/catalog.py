"""Catalog of the two reference configurations whose limit behaviour is
known case by case across the whole gamma range of the power-log family.

Illustration '3.1' is the homogeneous configuration beta > H0 > 2H
(H = 0.2, H0 = 0.5, beta = 1), where the eight gamma regimes run through
degenerate, Gumbel, mixture, and Normal limits.  Illustration '4.2' is the
inhomogeneous configuration H0 < H < beta < 2H - H0 (H = 0.6, H0 = 0.1,
beta = 1) with two drifts, where every non-degenerate limit carries the
log p1 shift.
"""
from __future__ import annotations

from .errors import ValidationError
from .horizons import PowerLogFamily, classify_scenario, classify_subcase
from .limits import predict_limit
from .model import DriftSet, ModelSpec, validate_model

__all__ = ["illustration_model", "illustration_cases", "illustration_rows"]


def illustration_model(which: str) -> ModelSpec:
    if which == "3.1":
        return validate_model(ModelSpec(
            H=0.2, H0=0.5, sigma0=0.5, beta=1.0, alpha=0.4,
            drift=DriftSet((1.0,))))
    if which == "4.2":
        return validate_model(ModelSpec(
            H=0.6, H0=0.1, sigma0=0.5, beta=1.0, alpha=1.2,
            drift=DriftSet((1.0, 2.0), (0.5, 0.5))))
    raise ValidationError(f"unknown illustration {which!r}; use 3.1 or 4.2")


def illustration_cases(which: str):
    """(case index, gamma, lambda) probes, one per regime of the table.

    The interior cases use a representative gamma; the boundary cases sit
    exactly on their thresholds.  ttilde0^beta = H / (c beta) separates the
    three lambda regimes at gamma = 1/(beta - H).
    """
    if which == "3.1":
        h = 0.2
        crit = 1.0 / (1.0 - h)                    # 1.25
        return [
            (1, -6.0, 2.0),
            (2, -1.0 / h, 2.0),                   # gamma = -5
            (3, -4.0, 2.0),
            (4, -1.0 / (0.5 - h), 2.0),           # gamma = -10/3
            (5, 0.0, 2.0),
            (6, crit, 0.1),
            (7, crit, 0.2),                       # lambda = ttilde0^beta
            (8, crit, 0.4),
        ]
    if which == "4.2":
        h = 0.6
        crit = 1.0 / (1.0 - h)                    # 2.5
        return [
            (1, -2.0, 2.0),
            (2, -1.0 / h, 2.0),                   # gamma = -5/3
            (3, 0.0, 2.0),
            (4, 1.0 / (h - 0.1), 2.0),            # gamma = 2
            (5, 2.25, 2.0),
            (6, crit, 0.3),
            (7, crit, 0.6),                       # lambda = ttilde0^beta
            (8, crit, 1.2),
        ]
    raise ValidationError(f"unknown illustration {which!r}; use 3.1 or 4.2")


def illustration_rows(which: str):
    """Classify and predict every case of an illustration table."""
    model = illustration_model(which)
    rows = []
    for case, gamma, lam in illustration_cases(which):
        family = PowerLogFamily(gamma, lam)
        sc = classify_scenario(family, model)
        sub = classify_subcase(family, model, sc)
        recipe, law = predict_limit(model, family)
        desc = law.describe()
        rows.append({
            "case": case, "gamma": gamma, "lambda": lam,
            "scenario": sc.scenario, "subcase": sub.case,
            "normalizer": recipe.kind,
            "x0": recipe.x0,
            "law": desc["variant"],
            "point": desc.get("point"),
            "shift": desc.get("shift"),
            "coef": desc.get("coef"),
        })
    return rows
