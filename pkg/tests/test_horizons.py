import math

import pytest

from gaussmax import (ClassificationError, ConstantFamily, DriftSet,
                      ExplicitFamily, ModelSpec, PowerLogFamily,
                      S4CalibratedFamily, UConstant, UDeviation,
                      UProportional, classify_scenario, classify_subcase,
                      classify_threshold, model_constants, validate_model)
from gaussmax.horizons import family_from_dict, family_to_dict


def make_model(H, H0, beta=1.0, sigma0=0.5, drifts=(1.0,), props=None):
    return validate_model(ModelSpec(H=H, H0=H0, sigma0=sigma0, beta=beta,
                                    alpha=min(2.0, 2.0 * H),
                                    drift=DriftSet(drifts, props)))


EX1 = make_model(0.2, 0.5)                                        # beta > H0 > 2H
EX2 = make_model(0.6, 0.1, drifts=(1.0, 2.0), props=(0.5, 0.5))   # H0 < H < beta < 2H - H0


# --- scenario classification --------------------------------------------------

def test_super_short_horizon_degenerates():
    sc = classify_scenario(PowerLogFamily(-6.0, 2.0), EX1)
    assert sc.scenario == "S1" and sc.kappa0 == 0.0


def test_super_short_boundary_keeps_scale():
    sc = classify_scenario(PowerLogFamily(-5.0, 2.0), EX1)
    assert sc.scenario == "S1" and sc.kappa0 == pytest.approx(0.5)


def test_boundary_is_a_genuine_discontinuity():
    exact = classify_scenario(PowerLogFamily(-5.0, 2.0), EX1)
    nudged = classify_scenario(PowerLogFamily(-5.0 - 1e-9, 2.0), EX1)
    assert exact.kappa0 == pytest.approx(0.5)
    assert nudged.kappa0 == 0.0


def test_long_horizon_critical_window():
    tt_beta = model_constants(0.2, 1.0, 1.0).ttilde0  # beta = 1
    sc = classify_scenario(PowerLogFamily(1.25, tt_beta), EX1)
    assert sc.scenario == "S4" and sc.x0 == 0.0


def test_constant_horizon_is_short():
    sc = classify_scenario(ConstantFamily(1.0), EX1)
    assert sc.scenario == "S2"


def test_intermediate_and_super_long():
    s3 = classify_scenario(PowerLogFamily(1.25, 0.1), EX1)
    assert s3.scenario == "S3" and s3.stilde0 == pytest.approx(0.1)
    s5a = classify_scenario(PowerLogFamily(1.25, 0.4), EX1)
    s5b = classify_scenario(PowerLogFamily(2.0, 0.1), EX1)
    assert s5a.scenario == "S5" and math.isinf(s5a.x0)
    assert s5b.scenario == "S5"


def test_s4_family_carries_its_deviation():
    fam = S4CalibratedFamily(x0=1.5)
    sc = classify_scenario(fam, EX1)
    assert sc.scenario == "S4" and sc.x0 == 1.5


def test_classification_is_total_and_exclusive_on_a_grid():
    models = [EX1, EX2, make_model(0.5, 0.5), make_model(0.7, 0.3, beta=1.4)]
    gammas = [-8.0, -5.0, -2.5, -1.0, 0.0, 0.5, 1.25, 2.0, 2.5, 4.0]
    lams = [0.1, 0.5, 1.0, 2.0]
    for m in models:
        for g in gammas:
            for lam in lams:
                sc = classify_scenario(PowerLogFamily(g, lam), m)
                assert sc.scenario in {"S1", "S2", "S3", "S4", "S5"}
                populated = {k for k in ("kappa0", "stilde0", "x0")
                             if getattr(sc, k) is not None}
                expected = {"S1": {"kappa0"}, "S2": set(),
                            "S3": {"stilde0"}, "S4": {"x0"},
                            "S5": {"x0"}}[sc.scenario]
                assert populated == expected
                sub = classify_subcase(PowerLogFamily(g, lam), m, sc)
                letters = ("a", "b.i", "b.ii", "b.iii", "c.i", "c.ii",
                           "c.iii", "d.i", "d.ii", "d.iii")
                assert sub.case in letters


# --- sub-case resolution --------------------------------------------------------

def test_subcase_normal_branch_for_constant_horizon():
    sub = classify_subcase(ConstantFamily(1.0), EX1)
    assert sub.case == "b.i"


def test_subcase_mixture_branch_with_coefficient():
    sub = classify_subcase(PowerLogFamily(-10.0 / 3.0, 2.0), EX1)
    assert sub.case == "b.iii"
    assert sub.q0 == pytest.approx(2.0)  # lambda itself on this boundary


def test_subcase_gumbel_branch_above_the_window():
    sub = classify_subcase(PowerLogFamily(-4.0, 2.0), EX1)
    assert sub.case == "b.ii"


def test_intermediate_subcase_matches_index_comparison():
    # under S3 the split is the sign of 2H - H0 - beta, with q0 = stilde0^beta
    m = make_model(0.6, 0.2)  # 2H - H0 = 1.0 = beta
    fam = PowerLogFamily(1.0 / (1.0 - 0.6), 0.3)
    sc = classify_scenario(fam, m)
    assert sc.scenario == "S3"
    sub = classify_subcase(fam, m, sc)
    assert sub.case == "b.iii"
    assert sub.q0 == pytest.approx(sc.stilde0 ** m.beta)


def test_inhomogeneous_growth_diagnostic():
    # gamma on the balanced-growth boundary: q1 = 1/lambda
    m = make_model(0.6, 0.1, drifts=(1.0, 2.0), props=(0.5, 0.5))
    sub = classify_subcase(PowerLogFamily(-2.5, 2.0), m)
    assert sub.q1 == pytest.approx(0.5)
    assert classify_subcase(PowerLogFamily(-3.0, 2.0), m).q1 == 0.0
    assert math.isinf(classify_subcase(PowerLogFamily(0.0, 2.0), m).q1)


def test_finite_q1_never_meets_mixture_subcases():
    # balanced growth forces the Normal branch: H0 < beta makes the two
    # boundary exponents incompatible
    for H in (0.3, 0.5, 0.6, 0.8):
        for H0 in (0.1, 0.3, 0.5, 0.7):
            for beta in (0.9, 1.0, 1.3):
                if beta <= max(H, H0):
                    continue
                m = make_model(H, H0, beta=beta, drifts=(1.0, 2.0),
                               props=(0.5, 0.5))
                for lam in (0.5, 1.0, 2.0):
                    g = -1.0 / (beta - H)
                    sub = classify_subcase(PowerLogFamily(g, lam), m)
                    if sub.q1 is not None and 0.0 < sub.q1 < math.inf:
                        assert sub.case not in ("b.ii", "b.iii")


# --- explicit sequences ----------------------------------------------------------

def test_explicit_constant_classifies_like_constant():
    fam = ExplicitFamily(lambda n: 1.0)
    assert classify_scenario(fam, EX1).scenario == "S2"
    assert classify_subcase(fam, EX1).case == "b.i"


def test_explicit_decaying_horizon_degenerates():
    fam = ExplicitFamily(lambda n: (2.0 * math.sqrt(2 * math.log(n))) ** -6.0)
    sc = classify_scenario(fam, EX1)
    assert sc.scenario == "S1" and sc.kappa0 == 0.0


def test_oscillating_explicit_sequence_is_rejected():
    table = {10 ** 3: 1.0, 10 ** 6: 5.0, 10 ** 9: 1.0, 10 ** 12: 5.0}
    fam = ExplicitFamily(lambda n: table[n])
    with pytest.raises(ClassificationError):
        classify_scenario(fam, EX1)


# --- threshold-dependent horizons -------------------------------------------------

def test_threshold_regimes():
    m = make_model(0.5, 0.5, sigma0=0.0)
    assert classify_threshold(UConstant(1.0), m).regime == "D1"
    d2 = classify_threshold(UProportional(0.5), m)
    assert d2.regime == "D2" and d2.s0 == 0.5
    d3 = classify_threshold(UProportional(1.0), m)  # t0 = 1
    assert d3.regime == "D3" and d3.x == 0.0
    assert math.isinf(classify_threshold(UProportional(2.0), m).x)
    assert classify_threshold(UDeviation(1.7), m).x == 1.7
    with pytest.raises(Exception):
        classify_threshold(UDeviation(-math.inf), m)


# --- serialization -----------------------------------------------------------------

def test_family_dict_round_trip():
    for fam in (PowerLogFamily(1.25, 0.2), ConstantFamily(3.0),
                S4CalibratedFamily(0.7)):
        assert family_from_dict(family_to_dict(fam)) == fam


def test_s4_family_value_matches_construction():
    m = make_model(0.5, 0.5)
    mc = model_constants(0.5, 1.0, 1.0)
    fam = S4CalibratedFamily(x0=0.0)
    n = 10 ** 6
    lead = (mc.ttilde0 * math.sqrt(2 * math.log(n))) ** 2.0
    assert fam.value(n, m) == pytest.approx(lead, rel=1e-12)
    fam2 = S4CalibratedFamily(x0=2.0)
    assert fam2.value(n, m) > fam.value(n, m)
