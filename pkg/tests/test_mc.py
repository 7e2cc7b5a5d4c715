import math

import numpy as np
import pytest
from scipy.special import ndtr
from scipy.stats import ks_2samp

from gaussmax import (ConstantFamily, DomainError, DriftSet, Grid, Gumbel,
                      ModelSpec, PowerLogFamily, SimConfig, StdNormal,
                      ValidationError, assemble_model_paths, brownian_model,
                      convergence_sweep, gof, independent_maxima,
                      limit_sampler, long_horizon_normalizers, path_supremum,
                      simulate_maxima, validate_model)

S5 = PowerLogFamily(2.0, 1.0)  # T_n = 2 log n for Brownian-type models


def brownian_crossing(u, c, T):
    rt = math.sqrt(T)
    return float(ndtr(-(u + c * T) / rt)
                 + math.exp(-2.0 * c * u) * ndtr(-(u - c * T) / rt))


def test_config_validation():
    m = brownian_model()
    with pytest.raises(ValidationError, match="power of two"):
        SimConfig(m, S5, n=10, replicas=10, grid_m=100)
    with pytest.raises(ValidationError):
        SimConfig(m, S5, n=0, replicas=10, grid_m=64)


def test_results_identical_across_thread_counts():
    cfg1 = SimConfig(brownian_model(sigma0=0.5), ConstantFamily(1.0),
                     n=8, replicas=40, grid_m=64, seed=5, threads=1)
    cfg2 = SimConfig(brownian_model(sigma0=0.5), ConstantFamily(1.0),
                     n=8, replicas=40, grid_m=64, seed=5, threads=2)
    r1 = simulate_maxima(cfg1)
    r2 = simulate_maxima(cfg2)
    assert np.array_equal(r1.raw, r2.raw)
    assert np.array_equal(r1.normalized, r2.normalized)


def test_single_path_exceedance_matches_reflection_oracle():
    # sup over [0,1] of B - t beyond u = 2; plain-MC rare-ish event
    u, reps = 2.0, 40_000
    cfg = SimConfig(brownian_model(sigma0=0.0), ConstantFamily(1.0),
                    n=1, replicas=reps, grid_m=1024, seed=31, threads=2)
    res = simulate_maxima(cfg)
    p_exact = brownian_crossing(u, 1.0, 1.0)
    p_hat = np.mean(res.raw > u)
    stderr = math.sqrt(p_exact * (1.0 - p_exact) / reps)
    assert abs(p_hat - p_exact) <= 3.0 * stderr


def test_strong_common_component_makes_suprema_comonotone():
    model = brownian_model(sigma0=100.0)
    grid = Grid(1.0, 128)
    reps = 400
    sups = np.empty((reps, 2))
    for r in range(reps):
        paths = assemble_model_paths(model, 2, grid, (77, r))
        sups[r] = [path_supremum(p) for p in paths]
    corr = np.corrcoef(sups[:, 0], sups[:, 1])[0, 1]
    assert corr >= 0.99


def test_drift_block_permutation_leaves_law_unchanged():
    model = validate_model(ModelSpec(H=0.5, H0=0.5, sigma0=0.0, beta=1.0,
                                     alpha=1.0,
                                     drift=DriftSet((1.0, 2.0), (0.5, 0.5))))
    n, reps = 32, 10_000
    fam = ConstantFamily(4.0)
    blocks = np.repeat([1.0, 2.0], [16, 16])
    swapped = blocks[::-1].copy()
    a = simulate_maxima(SimConfig(model, fam, n, reps, 256, seed=1,
                                  threads=2), drift_values=blocks)
    b = simulate_maxima(SimConfig(model, fam, n, reps, 256, seed=2,
                                  threads=2), drift_values=swapped)
    stat = ks_2samp(a.raw, b.raw).statistic
    assert stat <= 1.358 * math.sqrt(2.0 / reps)


def test_maxima_grow_with_nested_horizons():
    model = brownian_model(sigma0=0.5)
    grid = Grid(2.0, 512)
    for r in range(50):
        paths = assemble_model_paths(model, 16, grid, (13, r))
        vals = np.array([p.values for p in paths])
        m_half = vals[:, :257].max()
        m_full = vals.max()
        assert m_half <= m_full


def test_gof_accepts_its_own_law():
    m = 10 ** 5
    law = Gumbel(0.0)
    rep = gof(limit_sampler(law, seed=3, m=m), law)
    assert rep.ks <= 1.63 / math.sqrt(m) * 1.5
    assert rep.sample_size == m
    assert rep.ad < 4.0


def test_gof_rejects_degenerate_sample_against_normal():
    rep = gof(np.zeros(500), StdNormal())
    assert rep.ks >= 0.5
    shifted = gof(np.zeros(500) + 10.0, StdNormal())
    assert shifted.ks >= 0.99


def test_gof_needs_enough_samples():
    with pytest.raises(DomainError):
        gof(np.zeros(50), StdNormal())


def test_independent_maxima_drop_the_common_component():
    cfg = SimConfig(brownian_model(sigma0=5.0), ConstantFamily(1.0),
                    n=4, replicas=30, grid_m=64, seed=9)
    dep = simulate_maxima(cfg)
    ind = independent_maxima(cfg)
    base = simulate_maxima(SimConfig(brownian_model(sigma0=0.0),
                                     ConstantFamily(1.0), n=4, replicas=30,
                                     grid_m=64, seed=9))
    assert np.array_equal(ind.raw, base.raw)
    assert not np.array_equal(dep.raw, ind.raw)
    assert ind.law == Gumbel(0.0)


def test_long_horizon_gumbel_fit_at_moderate_n():
    cfg = SimConfig(brownian_model(sigma0=0.0), S5, n=100, replicas=400,
                    grid_m=1024, seed=17, threads=2)
    res = independent_maxima(cfg)
    assert res.normalizer.kind == "de"
    rep = gof(res.normalized, res.law)
    assert rep.ks <= 0.15


def test_single_process_is_not_max_stable():
    # a single supremum normalized by the n = 1000 recipe is far from Gumbel
    model = brownian_model(sigma0=0.0)
    norm = long_horizon_normalizers(1000, math.inf, model)
    cfg = SimConfig(model, ConstantFamily(S5.value(1000, model)), n=1,
                    replicas=400, grid_m=1024, seed=23, threads=2)
    res = simulate_maxima(cfg)
    rep = gof(norm.apply(res.raw), Gumbel(0.0))
    assert rep.ks > 0.3


def test_degenerate_horizon_concentrates_raw_maxima():
    model = validate_model(ModelSpec(H=0.2, H0=0.5, sigma0=0.5, beta=1.0,
                                     alpha=0.4, drift=DriftSet((1.0,))))
    fam = PowerLogFamily(-6.0, 2.0)
    spreads = []
    for n in (50, 400):
        cfg = SimConfig(model, fam, n=n, replicas=200, grid_m=256,
                        seed=41, threads=2)
        spreads.append(simulate_maxima(cfg).raw.std())
    assert spreads[1] < spreads[0]


def test_sweep_rows_are_ordered_and_complete():
    rows = convergence_sweep(brownian_model(sigma0=0.0), S5, [50, 100],
                             replicas=150, grid_m=512, seed=2, threads=2)
    assert [r["n"] for r in rows] == [50, 100]
    for r in rows:
        assert set(r) == {"n", "ks", "ad", "center", "scale"}
        assert 0.0 <= r["ks"] <= 1.0 and r["scale"] > 0
    with pytest.raises(ValidationError):
        convergence_sweep(brownian_model(), S5, [100, 50], 150, 512)
