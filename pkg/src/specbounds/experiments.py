"""Seeded Monte Carlo harness: concentration frequencies vs. bound values,
eigenvalue boxplot statistics, and the brute-force oracle suite.

Statistic convention: trials build the raw Gram matrix G and use
lambda_i(G)/n, which equals the i-th eigenvalue of the 1/n-scaled kernel
matrix.  Spectral bound inputs (gaps, range gaps, lambda_1) are taken from
the raw spectrum of G: that pairing makes the per-eigenvalue bound exactly
the bounded-difference inequality for the statistic (the per-replacement
change of lambda_i(G)/n is gap_raw/n, so the exponent is 2 n eps^2 /
gap_raw^2), and reports label the convention.

Per-trial RNG: subseed = splitmix64(master seed, trial index), so results are
identical for any worker count or scheduling order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import stats as sps

from . import bounds as bnd
from .alignment import kta, kta_bound_spectral, kta_bound_theta, middle_spectrum_norm, theta_statistic
from .dataset import SampleSet, covariance_stats, whitened_norm
from .errors import ConfigError, DegenerateGapError, SpecBoundsError
from .kernels import (
    DISTANCE,
    ONE_OVER_N,
    RAW,
    GramMatrix,
    KernelSpec,
    diag_sup,
    gram,
    kernel_from_config,
    linear,
    lipschitz,
)
from .spectral import (
    eig_sym,
    eigvec_first_order,
    gap_tolerance,
    gaps_from_eigenvalues,
    interlacing_check,
    perturb_replace,
    principal_submatrix,
    sign_align,
)

KNOWN_STATISTICS = ("eigenvalue", "topk_sum", "tail_sum", "kta")
KNOWN_BOUNDS = (
    "diag_uniform",
    "theta_top",
    "adjacent_gap",
    "topk_gap",
    "tail_gap",
    "covgap_distance",
    "covgap_inner",
    "covgap_second_order",
    "covgap_second_order_alt",
    "kta_theta",
    "kta_spectral",
)


def splitmix64(state: int) -> int:
    """One step of the splitmix64 sequence (deterministic 64-bit mix)."""
    z = (state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def subseed(master_seed: int, trial_index: int) -> int:
    """Per-trial RNG seed derived from (master seed, trial index)."""
    return splitmix64((master_seed & 0xFFFFFFFFFFFFFFFF) ^ splitmix64(trial_index))


def default_epsilons(points: int = 40) -> tuple[float, ...]:
    """40 log-spaced deviations spanning [1e-4, 1]."""
    return tuple(float(x) for x in np.logspace(-4.0, 0.0, points))


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a Monte Carlo run needs; JSON round-trippable."""

    n: int
    p: int
    trials: int
    seed: int
    kernel: dict = field(default_factory=lambda: {"family": "gaussian", "sigma": 1.0})
    generator: str = "gaussian"
    scaling: str = ONE_OVER_N
    epsilons: tuple[float, ...] = field(default_factory=default_epsilons)
    indices: tuple[int, ...] = (1, 2, 3)
    statistics: tuple[str, ...] = ("eigenvalue",)
    bounds: tuple[str, ...] = ("adjacent_gap",)

    def __post_init__(self):
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        object.__setattr__(self, "statistics", tuple(self.statistics))
        object.__setattr__(self, "bounds", tuple(self.bounds))
        object.__setattr__(self, "kernel", dict(self.kernel))
        if self.trials < 2:
            raise ConfigError(f"need at least 2 trials, got {self.trials}")
        if self.generator != "gaussian":
            raise ConfigError(f"unknown generator {self.generator!r}")
        if self.scaling not in (RAW, ONE_OVER_N):
            raise ConfigError(f"scaling must be {RAW!r} or {ONE_OVER_N!r}")
        eps = self.epsilons
        if not eps or any(e <= 0 for e in eps):
            raise ConfigError("epsilons must be positive")
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise ConfigError("epsilons must be strictly ascending")
        if not self.indices or any(not 1 <= i <= self.n for i in self.indices):
            raise ConfigError(f"indices must lie in 1..{self.n}")
        for s in self.statistics:
            if s not in KNOWN_STATISTICS:
                raise ConfigError(f"unknown statistic {s!r} (known: {KNOWN_STATISTICS})")
        for b in self.bounds:
            if b not in KNOWN_BOUNDS:
                raise ConfigError(f"unknown bound {b!r} (known: {KNOWN_BOUNDS})")
        kernel_from_config(self.kernel)  # validate eagerly

    def kernel_spec(self) -> KernelSpec:
        return kernel_from_config(self.kernel)

    def to_dict(self) -> dict:
        return {
            "generator": self.generator,
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "kernel": dict(self.kernel),
            "scaling": self.scaling,
            "epsilons": list(self.epsilons),
            "indices": list(self.indices),
            "statistics": list(self.statistics),
            "bounds": list(self.bounds),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        try:
            return cls(
                n=int(obj["n"]),
                p=int(obj["p"]),
                trials=int(obj["trials"]),
                seed=int(obj["seed"]),
                kernel=dict(obj.get("kernel", {"family": "gaussian", "sigma": 1.0})),
                generator=obj.get("generator", "gaussian"),
                scaling=obj.get("scaling", ONE_OVER_N),
                epsilons=tuple(obj.get("epsilons", default_epsilons())),
                indices=tuple(obj.get("indices", (1, 2, 3))),
                statistics=tuple(obj.get("statistics", ("eigenvalue",))),
                bounds=tuple(obj.get("bounds", ("adjacent_gap",))),
            )
        except KeyError as exc:
            raise ConfigError(f"experiment config is missing key {exc}") from exc


@dataclass(frozen=True)
class StatSeries:
    """Per-trial values of one statistic with its concentration summary."""

    statistic: str
    index: int | None
    values: np.ndarray
    mc_mean: float
    mc_se: float
    frequencies: np.ndarray     # per epsilon, strict deviation frequency
    frequency_se: np.ndarray
    five_number: tuple[float, float, float, float, float]
    iqr: float


@dataclass(frozen=True)
class BoundSeries:
    """Across-trial mean (and pessimistic percentile) of one bound's RHS."""

    theorem: str
    statistic: str
    index: int | None
    mean: np.ndarray            # per epsilon; NaN when every trial was excluded
    p10: np.ndarray
    excluded: int
    reason: str = ""


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    subseeds: tuple[int, ...]
    series: tuple[StatSeries, ...]
    bound_series: tuple[BoundSeries, ...]


def five_number_summary(values: np.ndarray) -> tuple[float, ...]:
    """(min, Q1, median, Q3, max) with type-7 (linear interpolation) quantiles."""
    q = np.quantile(values, [0.0, 0.25, 0.5, 0.75, 1.0], method="linear")
    return tuple(float(v) for v in q)


def _stat_keys(cfg: ExperimentConfig) -> list[tuple[str, int | None]]:
    keys: list[tuple[str, int | None]] = []
    for stat in cfg.statistics:
        if stat == "kta":
            keys.append(("kta", None))
        else:
            keys.extend((stat, i) for i in cfg.indices)
    return keys


def _bound_keys(cfg: ExperimentConfig) -> list[tuple[str, str, int | None]]:
    keys: list[tuple[str, str, int | None]] = []
    for theorem in cfg.bounds:
        if theorem in ("kta_theta", "kta_spectral"):
            if "kta" in cfg.statistics:
                keys.append((theorem, "kta", None))
            continue
        if theorem == "topk_gap":
            keys.extend((theorem, "topk_sum", i) for i in cfg.indices if "topk_sum" in cfg.statistics)
            continue
        if theorem == "tail_gap":
            keys.extend((theorem, "tail_sum", i) for i in cfg.indices if "tail_sum" in cfg.statistics)
            continue
        if "eigenvalue" in cfg.statistics:
            keys.extend((theorem, "eigenvalue", i) for i in cfg.indices)
    return keys


def _concentration_trial(args: tuple[dict, int]) -> dict:
    """One seeded trial; returns statistic values and per-bound RHS arrays."""
    cfg_dict, trial_seed = args
    cfg = ExperimentConfig.from_dict(cfg_dict)
    spec = cfg.kernel_spec()
    rng = np.random.default_rng(trial_seed)
    rows = rng.standard_normal((cfg.n, cfg.p))
    samples = SampleSet(rows=rows, provenance=f"gaussian(seed={trial_seed})")
    g_raw = gram(samples, spec, RAW)
    lam = np.sort(np.linalg.eigvalsh(g_raw.entries))[::-1]
    lam_stat = lam / cfg.n if cfg.scaling == ONE_OVER_N else lam.copy()
    eps = np.asarray(cfg.epsilons)

    stats: dict[tuple[str, int | None], float] = {}
    labels = None
    for stat, idx in _stat_keys(cfg):
        if stat == "eigenvalue":
            stats[(stat, idx)] = float(lam_stat[idx - 1])
        elif stat == "topk_sum":
            stats[(stat, idx)] = float(np.sum(lam_stat[:idx]))
        elif stat == "tail_sum":
            stats[(stat, idx)] = float(np.sum(lam_stat[idx - 1 :]))
        elif stat == "kta":
            labels = rng.choice([-1.0, 1.0], size=cfg.n)
            stats[(stat, None)] = kta(g_raw, labels)

    needs_cov = any(b.startswith("covgap") for b in cfg.bounds)
    cov = None
    lip = None
    if needs_cov:
        try:
            cov = covariance_stats(samples)
            lip = lipschitz(spec, samples)
        except SpecBoundsError:
            cov = None

    rhs: dict[tuple[str, str, int | None], np.ndarray | None] = {}
    flagged: dict[tuple[str, str, int | None], str] = {}

    def put(key, fn):
        try:
            rhs[key] = np.array([fn(float(e)) for e in eps])
        except SpecBoundsError as exc:
            rhs[key] = None
            flagged[key] = str(exc)

    theta_value = None
    for key in _bound_keys(cfg):
        theorem, stat, idx = key
        try:
            if theorem == "diag_uniform":
                r2 = diag_sup(samples, spec)
                put(key, lambda e, _r2=r2: bnd.bound_trace_uniform(cfg.n, _r2, e))
            elif theorem == "theta_top":
                if theta_value is None:
                    theta_value = theta_statistic(g_raw)
                put(key, lambda e: bnd.bound_theta(theta_value, float(lam[0]), e))
            elif theorem == "adjacent_gap":
                profile = gaps_from_eigenvalues(lam, idx)
                put(key, lambda e, _p=profile: bnd.bound_gap(cfg.n, _p, e))
            elif theorem == "topk_gap":
                put(key, lambda e, _i=idx: bnd.bound_topk_sum(cfg.n, lam, _i, e))
            elif theorem == "tail_gap":
                put(key, lambda e, _i=idx: bnd.bound_tail_sum(cfg.n, lam, _i, e))
            elif theorem in ("covgap_distance", "covgap_inner"):
                if cov is None:
                    raise DegenerateGapError("singular sample covariance")
                fn = bnd.bound_distance if theorem == "covgap_distance" else bnd.bound_inner
                put(key, lambda e, _f=fn: _f(cfg.n, cov, lip, e))
            elif theorem in ("covgap_second_order", "covgap_second_order_alt"):
                if cov is None:
                    raise DegenerateGapError("singular sample covariance")
                variant = "printed" if theorem == "covgap_second_order" else "alt"
                profile = gaps_from_eigenvalues(lam, idx)
                put(key, lambda e, _p=profile, _v=variant: bnd.bound_second_order(cfg.n, cov, lip, _p, e, _v))
            elif theorem == "kta_theta":
                if theta_value is None:
                    theta_value = theta_statistic(g_raw)
                frob = float(np.linalg.norm(g_raw.entries, ord="fro"))
                a_kn = stats[("kta", None)]
                put(key, lambda e: kta_bound_theta(e, a_kn=a_kn, theta=theta_value, n=cfg.n, frob=frob))
            elif theorem == "kta_spectral":
                frob = float(np.linalg.norm(g_raw.entries, ord="fro"))
                a_kn = stats[("kta", None)]
                l_mid = middle_spectrum_norm(lam)
                put(key, lambda e: kta_bound_spectral(e, a_kn=a_kn, n=cfg.n, l_mid=l_mid, frob=frob))
        except SpecBoundsError as exc:
            # degenerate bound inputs flag the trial, never abort the run
            rhs[key] = None
            flagged[key] = str(exc)

    return {"stats": stats, "rhs": rhs, "flagged": flagged}


def _map_trials(fn, args_list, workers: int):
    if workers <= 1:
        return [fn(a) for a in args_list]
    chunk = max(1, len(args_list) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, args_list, chunksize=chunk))


def run_concentration(
    cfg: ExperimentConfig,
    workers: int = 1,
    subseeds: tuple[int, ...] | None = None,
) -> ExperimentResult:
    """Run the seeded trials and aggregate frequencies and mean bound values.

    `subseeds` overrides the per-trial seeds (testing hook).  Trials whose
    bound inputs are degenerate are excluded from that bound's mean (count
    reported) but never from the empirical frequencies.
    """
    if subseeds is None:
        seeds = tuple(subseed(cfg.seed, t) for t in range(cfg.trials))
    else:
        if len(subseeds) != cfg.trials:
            raise ConfigError(f"need {cfg.trials} subseeds, got {len(subseeds)}")
        seeds = tuple(int(s) for s in subseeds)
    payloads = _map_trials(_concentration_trial, [(cfg.to_dict(), s) for s in seeds], workers)

    eps = np.asarray(cfg.epsilons)
    t_count = cfg.trials
    series = []
    for key in _stat_keys(cfg):
        values = np.array([p["stats"][key] for p in payloads])
        mean = float(np.mean(values))
        se = float(np.std(values, ddof=1) / np.sqrt(t_count))
        deviations = np.abs(values - mean)
        freq = np.array([float(np.mean(deviations > e)) for e in eps])
        freq_se = np.sqrt(freq * (1.0 - freq) / t_count)
        fns = five_number_summary(values)
        series.append(
            StatSeries(
                statistic=key[0],
                index=key[1],
                values=values,
                mc_mean=mean,
                mc_se=se,
                frequencies=freq,
                frequency_se=freq_se,
                five_number=fns,
                iqr=fns[3] - fns[1],
            )
        )

    bound_series = []
    for key in _bound_keys(cfg):
        rows = [p["rhs"].get(key) for p in payloads]
        kept = np.array([r for r in rows if r is not None])
        excluded = sum(1 for r in rows if r is None)
        reasons = [p["flagged"][key] for p in payloads if key in p["flagged"]]
        if kept.size:
            mean = kept.mean(axis=0)
            p10 = np.quantile(kept, 0.1, axis=0, method="linear")
        else:
            mean = np.full(eps.shape, np.nan)
            p10 = np.full(eps.shape, np.nan)
        bound_series.append(
            BoundSeries(
                theorem=key[0],
                statistic=key[1],
                index=key[2],
                mean=mean,
                p10=p10,
                excluded=excluded,
                reason=reasons[0] if reasons else "",
            )
        )
    return ExperimentResult(
        config=cfg, subseeds=seeds, series=tuple(series), bound_series=tuple(bound_series)
    )


@dataclass(frozen=True)
class BoxplotResult:
    """Five-number summaries per eigen-order, mean adjacent gaps, and the
    Spearman rank correlation between mean gap and IQR across orders."""

    config: ExperimentConfig
    subseeds: tuple[int, ...]
    indices: tuple[int, ...]
    five_numbers: tuple[tuple[float, float, float, float, float], ...]
    iqrs: tuple[float, ...]
    mean_gaps: tuple[float, ...]
    spearman_gap_iqr: float


def _boxplot_trial(args: tuple[dict, int]) -> np.ndarray:
    cfg_dict, trial_seed = args
    cfg = ExperimentConfig.from_dict(cfg_dict)
    spec = cfg.kernel_spec()
    rng = np.random.default_rng(trial_seed)
    samples = SampleSet(rows=rng.standard_normal((cfg.n, cfg.p)), provenance="boxplot-trial")
    lam = np.sort(np.linalg.eigvalsh(gram(samples, spec, RAW).entries))[::-1]
    if cfg.scaling == ONE_OVER_N:
        lam = lam / cfg.n
    top = max(cfg.indices) + 1
    return lam[: min(top, cfg.n)]


def boxplot_stats(cfg: ExperimentConfig, workers: int = 1) -> BoxplotResult:
    """Boxplot statistics of the per-order eigenvalue statistic across trials."""
    seeds = tuple(subseed(cfg.seed, t) for t in range(cfg.trials))
    spectra = np.array(
        _map_trials(_boxplot_trial, [(cfg.to_dict(), s) for s in seeds], workers)
    )
    fives, iqrs, mean_gaps = [], [], []
    for i in cfg.indices:
        values = spectra[:, i - 1]
        fns = five_number_summary(values)
        fives.append(fns)
        iqrs.append(fns[3] - fns[1])
        if i < cfg.n and i < spectra.shape[1]:
            mean_gaps.append(float(np.mean(spectra[:, i - 1] - spectra[:, i])))
        else:
            mean_gaps.append(float("nan"))
    finite = [k for k, gp in enumerate(mean_gaps) if np.isfinite(gp)]
    if len(finite) >= 2:
        rho = float(sps.spearmanr([mean_gaps[k] for k in finite], [iqrs[k] for k in finite]).statistic)
    else:
        rho = float("nan")
    return BoxplotResult(
        config=cfg,
        subseeds=seeds,
        indices=cfg.indices,
        five_numbers=tuple(fives),
        iqrs=tuple(iqrs),
        mean_gaps=tuple(mean_gaps),
        spearman_gap_iqr=rho,
    )


@dataclass(frozen=True)
class OracleRow:
    """Empirical outcome of one inequality: violations are data, not errors."""

    name: str
    trials: int
    violations: int
    skipped: int
    max_violation: float


@dataclass(frozen=True)
class OracleTable:
    config: ExperimentConfig
    rows: tuple[OracleRow, ...]

    def row(self, name: str) -> OracleRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)


def _interlacing_trial(trial_seed: int) -> tuple[int, float]:
    """One random symmetric PSD matrix (dim 3..40), checked at every drop index."""
    rng = np.random.default_rng(trial_seed)
    dim = int(rng.integers(3, 41))
    b = rng.standard_normal((dim, dim))
    a = GramMatrix(entries=(b @ b.T) / dim, scaling=RAW)
    parent = eig_sym(a)
    violations = 0
    worst = -np.inf
    for drop in range(1, dim + 1):
        child = eig_sym(principal_submatrix(a, drop))
        ok, violation = interlacing_check(parent, child)
        worst = max(worst, violation)
        if not ok:
            violations += 1
    return violations, worst


def _perturbation_trial(args: tuple[dict, int, int, bool]) -> dict:
    """One replace-one trial: eigenvalue stability and perturbation-norm checks."""
    cfg_dict, trial_seed, index, zero_perturbation = args
    cfg = ExperimentConfig.from_dict(cfg_dict)
    spec = cfg.kernel_spec()
    rng = np.random.default_rng(trial_seed)
    samples = SampleSet(rows=rng.standard_normal((cfg.n, cfg.p)), provenance="oracle-trial")
    replacement = rng.standard_normal(cfg.p)
    replace_at = int(rng.integers(1, cfg.n + 1))
    if zero_perturbation:
        replacement = samples.rows[replace_at - 1].copy()
    pair = perturb_replace(samples, spec, replace_at, replacement, ONE_OVER_N)
    lam = np.sort(np.linalg.eigvalsh(pair.original.entries))[::-1]
    lam_pert = np.sort(np.linalg.eigvalsh(pair.perturbed.entries))[::-1]
    norm_e = pair.spectral_norm_e

    out: dict[str, tuple[float, float] | None] = {}
    # Weyl-type stability: every eigenvalue moves at most ||E||.
    out["eigenvalue_stability"] = (float(np.max(np.abs(lam_pert - lam))), norm_e + 1e-9)

    cov = covariance_stats(samples)
    radius = max(cov.whitened_radius, whitened_norm(cov, replacement))
    cov = replace(cov, whitened_radius=radius)  # boundedness covers the replacement
    lip = lipschitz(spec, samples)
    norms = bnd.error_norm_bound(
        "distance" if spec.kind == DISTANCE else "inner", cov, lip, cfg.n
    )
    out["perturbation_norm_printed"] = (norm_e, norms.printed)
    out["perturbation_norm_conservative"] = (norm_e, norms.conservative)

    lin_pair = perturb_replace(samples, linear(), replace_at, replacement, ONE_OVER_N)
    lin_bound = bnd.error_norm_bound("inner", cov, 1.0, cfg.n)
    out["perturbation_norm_inner"] = (lin_pair.spectral_norm_e, lin_bound.printed)

    # Second-order eigenvalue bound, only where the expansion is valid.
    profile = gaps_from_eigenvalues(lam, index)
    others = np.abs(np.delete(lam - lam[index - 1], index - 1))
    min_gap = float(np.min(others))
    if profile.degenerate or norm_e >= 0.5 * min_gap:
        out["second_order_eigenvalue"] = None
    else:
        lhs = float(np.abs(lam_pert[index - 1] - lam[index - 1]))
        out["second_order_eigenvalue"] = (lhs, norm_e + norm_e**2 * profile.resolvent_sum + 1e-9)
    return out


def _expansion_trial(args: tuple[dict, int, int, bool]) -> tuple[float, float] | None:
    """Quadratic-residual check of the first-order eigenvector expansion.

    Scales the perturbation so its norm is a quarter of the spectral distance,
    then compares residuals at t and t/2: (r(t/2), 0.35 * r(t)), or None when
    the trial is degenerate.
    """
    cfg_dict, trial_seed, index, zero_perturbation = args
    cfg = ExperimentConfig.from_dict(cfg_dict)
    spec = cfg.kernel_spec()
    rng = np.random.default_rng(trial_seed)
    samples = SampleSet(rows=rng.standard_normal((cfg.n, cfg.p)), provenance="expansion-trial")
    replacement = rng.standard_normal(cfg.p)
    replace_at = int(rng.integers(1, cfg.n + 1))
    if zero_perturbation:
        replacement = samples.rows[replace_at - 1].copy()
    pair = perturb_replace(samples, spec, replace_at, replacement, ONE_OVER_N)
    base = eig_sym(pair.original)
    lam = base.eigenvalues
    others = np.abs(np.delete(lam - lam[index - 1], index - 1))
    min_gap = float(np.min(others))
    if min_gap < gap_tolerance(float(lam[0])) or pair.spectral_norm_e <= 0.0:
        return None
    t = min(1.0, 0.25 * min_gap / pair.spectral_norm_e)
    u_base = base.eigenvector(index)

    def residual(scale: float) -> float:
        true_vec = eig_sym(pair.original.entries + scale * pair.e).eigenvector(index)
        true_vec = sign_align(true_vec, u_base)
        predicted = eigvec_first_order(base, -scale * pair.e, index)
        return float(np.linalg.norm(true_vec - predicted))

    r_t = residual(t)
    if r_t < 1e-13:
        return (0.0, 0.0)  # residual at numerical floor; quadratic decay vacuous
    return (residual(0.5 * t), 0.35 * r_t)


def run_oracles(
    cfg: ExperimentConfig,
    interlacing_matrices: int = 200,
    perturbation_trials: int = 500,
    expansion_trials: int = 50,
    index: int = 1,
    workers: int = 1,
    zero_perturbation: bool = False,
) -> OracleTable:
    """Run every inequality oracle and tabulate violation rates.

    Row names: interlacing, eigenvalue_stability, perturbation_norm_printed,
    perturbation_norm_conservative, second_order_eigenvalue,
    eigvec_expansion_residual, perturbation_norm_inner.
    """
    if min(interlacing_matrices, perturbation_trials) < 100 or expansion_trials < 1:
        raise ConfigError("oracle trial counts must be >= 100 (expansion >= 1)")
    rows: list[OracleRow] = []

    seeds = [subseed(cfg.seed, 1_000_000 + t) for t in range(interlacing_matrices)]
    results = _map_trials(_interlacing_trial, seeds, workers)
    violations = sum(v for v, _ in results)
    rows.append(
        OracleRow(
            name="interlacing",
            trials=interlacing_matrices,
            violations=violations,
            skipped=0,
            max_violation=max(0.0, max(w for _, w in results)),
        )
    )

    args = [
        (cfg.to_dict(), subseed(cfg.seed, 2_000_000 + t), index, zero_perturbation)
        for t in range(perturbation_trials)
    ]
    payloads = _map_trials(_perturbation_trial, args, workers)
    for name in (
        "eigenvalue_stability",
        "perturbation_norm_printed",
        "perturbation_norm_conservative",
        "second_order_eigenvalue",
        "perturbation_norm_inner",
    ):
        lhs_rhs = [p[name] for p in payloads]
        kept = [x for x in lhs_rhs if x is not None]
        excess = [lhs - rhs for lhs, rhs in kept]
        rows.append(
            OracleRow(
                name=name,
                trials=len(kept),
                violations=sum(1 for e in excess if e > 0),
                skipped=len(lhs_rhs) - len(kept),
                max_violation=max(0.0, max(excess)) if excess else 0.0,
            )
        )

    args = [
        (cfg.to_dict(), subseed(cfg.seed, 3_000_000 + t), index, zero_perturbation)
        for t in range(expansion_trials)
    ]
    residuals = _map_trials(_expansion_trial, args, workers)
    kept = [r for r in residuals if r is not None]
    excess = [lhs - rhs for lhs, rhs in kept]
    rows.insert(
        5,
        OracleRow(
            name="eigvec_expansion_residual",
            trials=len(kept),
            violations=sum(1 for e in excess if e > 0),
            skipped=len(residuals) - len(kept),
            max_violation=max(0.0, max(excess)) if excess else 0.0,
        ),
    )
    return OracleTable(config=cfg, rows=tuple(rows))
