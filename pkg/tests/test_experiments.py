import numpy as np
import pytest

from specbounds.errors import ConfigError
from specbounds.experiments import (
    ExperimentConfig,
    boxplot_stats,
    default_epsilons,
    five_number_summary,
    run_concentration,
    run_oracles,
    splitmix64,
    subseed,
)

EPS_SMALL = (0.001, 0.01, 0.05, 0.1, 0.5)


def _cfg(**kw):
    base = dict(
        n=30,
        p=2,
        trials=40,
        seed=123,
        kernel={"family": "gaussian", "sigma": 1.0},
        epsilons=EPS_SMALL,
        indices=(1, 2),
        statistics=("eigenvalue",),
        bounds=("adjacent_gap",),
    )
    base.update(kw)
    return ExperimentConfig(**base)


def test_splitmix_deterministic_and_spread():
    assert splitmix64(0) == splitmix64(0)
    seeds = {subseed(7, t) for t in range(1000)}
    assert len(seeds) == 1000
    assert subseed(7, 1) != subseed(8, 1)


def test_default_epsilons_grid():
    eps = default_epsilons()
    assert len(eps) == 40
    assert eps[0] == pytest.approx(1e-4)
    assert eps[-1] == pytest.approx(1.0)
    assert all(b > a for a, b in zip(eps, eps[1:]))


def test_config_round_trip_identity():
    cfg = _cfg()
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg


def test_config_validation():
    with pytest.raises(ConfigError):
        _cfg(trials=1)
    with pytest.raises(ConfigError):
        _cfg(epsilons=(0.5, 0.1))
    with pytest.raises(ConfigError):
        _cfg(indices=(0,))
    with pytest.raises(ConfigError):
        _cfg(statistics=("median",))
    with pytest.raises(ConfigError):
        _cfg(bounds=("chernoff",))
    with pytest.raises(ConfigError):
        _cfg(kernel={"family": "rbf"})


def test_identical_subseeds_zero_frequency():
    cfg = _cfg(trials=2)
    s = subseed(cfg.seed, 0)
    result = run_concentration(cfg, subseeds=(s, s))
    for series in result.series:
        assert np.all(series.frequencies == 0.0)
        assert series.iqr == 0.0


def test_empirical_frequency_matches_reference_loop():
    cfg = _cfg(trials=50)
    result = run_concentration(cfg)
    for series in result.series:
        assert np.all(np.diff(series.frequencies) <= 0)  # nonincreasing in eps
        values = series.values
        mean = sum(values) / len(values)  # scalar reference
        for j, eps in enumerate(cfg.epsilons):
            count = 0
            for v in values:
                if abs(v - mean) > eps:
                    count += 1
            assert series.frequencies[j] == count / len(values)
            f = count / len(values)
            assert series.frequency_se[j] == pytest.approx(
                np.sqrt(f * (1 - f) / len(values))
            )


def test_quantiles_match_sorted_reference():
    rng = np.random.default_rng(70)
    for _ in range(25):
        values = rng.standard_normal(int(rng.integers(5, 60)))
        five = five_number_summary(values)
        srt = np.sort(values)
        n = len(srt)
        for q, got in zip((0.0, 0.25, 0.5, 0.75, 1.0), five):
            h = (n - 1) * q
            lo = int(np.floor(h))
            hi = min(lo + 1, n - 1)
            want = srt[lo] + (h - lo) * (srt[hi] - srt[lo])
            assert abs(got - want) <= 1e-12


def test_run_concentration_determinism_and_workers():
    cfg = _cfg()
    a = run_concentration(cfg, workers=1)
    b = run_concentration(cfg, workers=2)
    assert a.subseeds == b.subseeds
    for sa, sb in zip(a.series, b.series):
        assert np.array_equal(sa.values, sb.values)
        assert np.array_equal(sa.frequencies, sb.frequencies)
    for ba, bb in zip(a.bound_series, b.bound_series):
        assert np.array_equal(ba.mean, bb.mean)
        assert np.array_equal(ba.p10, bb.p10)


def test_bound_mean_nonincreasing_and_nonnegative():
    cfg = _cfg(bounds=("adjacent_gap", "diag_uniform", "covgap_distance"))
    result = run_concentration(cfg)
    for b in result.bound_series:
        if b.excluded:
            continue
        assert np.all(b.mean >= 0.0)
        assert np.all(np.diff(b.mean) <= 1e-15)
        assert np.all(b.p10 <= b.mean + 1e-12)


def test_degenerate_trials_excluded_not_dropped():
    # index n has no next eigenvalue: every trial is excluded for the gap
    # bound, but the empirical frequencies still cover all trials.
    cfg = _cfg(indices=(1, 30), trials=10)
    result = run_concentration(cfg)
    gap_n = [b for b in result.bound_series if b.index == 30][0]
    assert gap_n.excluded == 10
    assert np.all(np.isnan(gap_n.mean))
    assert gap_n.reason != ""
    series_n = [s for s in result.series if s.index == 30][0]
    assert len(series_n.values) == 10


def test_degenerate_bound_inputs_flag_not_crash():
    # linear kernel on 2-d data: rank-2 Gram, so theta and the interior
    # spectrum norm are undefined; every trial must be flagged, never raised.
    cfg = _cfg(
        kernel={"family": "linear"},
        statistics=("eigenvalue", "kta"),
        bounds=("theta_top", "kta_spectral"),
        indices=(1,),
        trials=6,
        n=10,
        p=2,
    )
    result = run_concentration(cfg)
    for b in result.bound_series:
        if b.theorem == "theta_top":
            assert b.excluded == 6
            assert "orders" in b.reason or "tolerance" in b.reason
    for s in result.series:
        assert len(s.values) == 6  # frequencies never drop trials


def test_kta_statistic_and_bounds():
    cfg = _cfg(
        statistics=("eigenvalue", "kta"),
        bounds=("adjacent_gap", "kta_theta", "kta_spectral"),
        trials=12,
        n=12,
    )
    result = run_concentration(cfg)
    kta_series = [s for s in result.series if s.statistic == "kta"]
    assert len(kta_series) == 1
    assert np.all(np.abs(kta_series[0].values) <= 1.0 + 1e-12)
    theorems = {b.theorem for b in result.bound_series}
    assert {"kta_theta", "kta_spectral"} <= theorems


def test_topk_tail_statistics():
    cfg = _cfg(
        statistics=("topk_sum", "tail_sum"),
        bounds=("topk_gap", "tail_gap"),
        indices=(2,),
        trials=10,
    )
    result = run_concentration(cfg)
    stats = {(s.statistic, s.index) for s in result.series}
    assert stats == {("topk_sum", 2), ("tail_sum", 2)}
    theorems = {(b.theorem, b.index) for b in result.bound_series}
    assert theorems == {("topk_gap", 2), ("tail_gap", 2)}


def test_boxplot_stats_and_spearman():
    cfg = _cfg(indices=tuple(range(1, 9)), trials=60, p=3)
    box = boxplot_stats(cfg)
    assert len(box.five_numbers) == 8
    for five in box.five_numbers:
        assert five[0] <= five[1] <= five[2] <= five[3] <= five[4]
    assert all(iqr >= 0 for iqr in box.iqrs)
    # deterministic across calls and workers
    again = boxplot_stats(cfg, workers=2)
    assert box.five_numbers == again.five_numbers
    assert box.spearman_gap_iqr == again.spearman_gap_iqr


def test_spearman_of_monotone_pairing_is_one():
    from scipy import stats as sps

    x = np.array([0.1, 0.2, 0.5, 0.9, 2.0])
    y = np.exp(x)  # strictly monotone map
    assert float(sps.spearmanr(x, y).statistic) == pytest.approx(1.0)


def test_run_oracles_zero_perturbation_smoke():
    cfg = _cfg(n=20, p=2)
    table = run_oracles(
        cfg,
        interlacing_matrices=100,
        perturbation_trials=100,
        expansion_trials=2,
        zero_perturbation=True,
    )
    for row in table.rows:
        assert row.violations == 0, row
    stability = table.row("eigenvalue_stability")
    assert stability.trials == 100


def test_run_oracles_trial_count_precondition():
    with pytest.raises(ConfigError):
        run_oracles(_cfg(), interlacing_matrices=10, perturbation_trials=100)


def test_run_oracles_determinism_across_workers():
    cfg = _cfg(n=15, p=2)
    a = run_oracles(cfg, interlacing_matrices=100, perturbation_trials=100, expansion_trials=3)
    b = run_oracles(
        cfg, interlacing_matrices=100, perturbation_trials=100, expansion_trials=3, workers=2
    )
    assert a.rows == b.rows
