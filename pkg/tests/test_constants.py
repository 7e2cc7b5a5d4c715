import math

import pytest

from gaussmax import (BudgetError, DomainError, EstimatorParams,
                      pickands_constant, piterbarg_constant)
from gaussmax.constants import cached_pickands

FAST = EstimatorParams(window=30.0, mesh=0.02, replicas=20_000, batches=20,
                       seed=11)


def test_alpha_domain():
    with pytest.raises(DomainError):
        pickands_constant(0.0)
    with pytest.raises(DomainError):
        pickands_constant(2.5)
    with pytest.raises(DomainError):
        piterbarg_constant(1.0, 0.0)


def test_budget_guard():
    with pytest.raises(BudgetError):
        pickands_constant(1.0, EstimatorParams(window=40, mesh=1e-9))
    with pytest.raises(BudgetError):
        pickands_constant(1.0, EstimatorParams(replicas=5, batches=10))


def test_brownian_order_reproduces_one():
    est = pickands_constant(1.0, FAST)
    assert abs(est.value - 1.0) <= 0.05
    assert est.stderr < 0.01


def test_degenerate_order_reproduces_inverse_root_pi():
    # at alpha = 2 the driving field is t * Z and the max-to-sum ratio is
    # the constant 1/sqrt(pi) up to discretization
    est = pickands_constant(2.0, EstimatorParams(window=30.0, mesh=0.02,
                                                 replicas=2000, batches=10,
                                                 seed=3))
    assert abs(est.value - 1.0 / math.sqrt(math.pi)) <= 0.1 / math.sqrt(math.pi)
    assert est.stderr <= 1e-3


@pytest.mark.parametrize("d", [1.0, 2.0])
def test_piterbarg_closed_form_at_alpha_one(d):
    est = piterbarg_constant(1.0, d, EstimatorParams(
        window=30.0, mesh=0.05, replicas=40_000, batches=20, seed=4))
    assert abs(est.value - (1.0 + 1.0 / d)) <= 0.05 * (1.0 + 1.0 / d)


def test_piterbarg_large_damping_tends_to_one():
    est = piterbarg_constant(1.0, 50.0, EstimatorParams(
        window=20.0, mesh=0.05, replicas=20_000, batches=10, seed=5))
    assert 1.0 < est.value < 1.1


def test_mesh_refinement_does_not_lower_the_estimate():
    # a coarser grid can only miss excursion mass
    coarse = pickands_constant(0.5, EstimatorParams(
        window=10.0, mesh=0.04, replicas=4000, batches=10, seed=6))
    fine = pickands_constant(0.5, EstimatorParams(
        window=10.0, mesh=0.02, replicas=4000, batches=10, seed=6))
    assert fine.value >= coarse.value - 2.0 * (coarse.stderr + fine.stderr)


def test_estimates_are_deterministic_and_cached():
    a = pickands_constant(1.5, EstimatorParams(window=10, mesh=0.05,
                                               replicas=2000, batches=10,
                                               seed=7))
    b = pickands_constant(1.5, EstimatorParams(window=10, mesh=0.05,
                                               replicas=2000, batches=10,
                                               seed=7))
    assert a.value == b.value and a.stderr == b.stderr
    p = EstimatorParams(window=10, mesh=0.05, replicas=2000, batches=10,
                        seed=8)
    assert cached_pickands(1.5, p) is cached_pickands(1.5, p)
