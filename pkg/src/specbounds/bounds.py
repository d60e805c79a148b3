"""Closed-form concentration bounds over precomputed spectral statistics.

Every function is a pure formula: same inputs, bit-identical outputs.  Raw
values may exceed 1 (vacuous); report assembly keeps the raw value and flags
it instead of hiding it.

Theorem ids used in reports:

  diag_uniform          2 exp(-2 n eps^2 / diag_sup^2)
  theta_top             2 exp(-2 eps^2 / (theta^2 lambda_1^2))
  adjacent_gap          exp(-2 n eps^2 / gap_{i,i+1}^2)
  topk_gap / tail_gap   exp(-2 n eps^2 / range_gap^2)
  covgap_distance       exp(-n^2 eps^2 / (18 M^4 lip^2 gap_1p^2))
  covgap_inner          exp(-n^2 eps^2 / (4  M^4 lip^2 gap_1p^2))
  covgap_second_order   exp(-n^2 eps^2 / gamma^2), gamma from the second-order
                        eigenvalue expansion (printed and alt variants)
  eigvec_pointwise      exp(-eps^2 / (18 M^4 lip^2 R_i^2 gap_1p^2))
  eigvec_uniform        2 exp(2n - c eps^2), 1/c = 18 M^4 lip^2 R_i^2 gap_1p^2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .dataset import CovarianceStats
from .errors import ConfigError, DegenerateGapError
from .spectral import GapProfile, Spectrum, gap_tolerance, gaps, range_gap_tail, range_gap_top

DEGENERATE_GAP_MESSAGE = "theorem assumes distinct eigenvalues"


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if eps < 0:
        raise ConfigError(f"epsilon must be >= 0, got {eps}")
    return eps


def bound_trace_uniform(n: int, diag_sup_sq: float, eps: float) -> float:
    """Uniform bound from the supremum of the kernel diagonal (R^2)."""
    eps = _check_eps(eps)
    if diag_sup_sq <= 0:
        raise ConfigError(f"diagonal supremum must be positive, got {diag_sup_sq}")
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    return 2.0 * math.exp(-2.0 * n * eps * eps / (diag_sup_sq * diag_sup_sq))


def bound_theta(theta: float, lambda_1: float, eps: float) -> float:
    """Bound from the top eigenvalue and the shrinkage statistic theta."""
    eps = _check_eps(eps)
    if not 0.0 < theta <= 1.0:
        raise ConfigError(f"theta must lie in (0, 1], got {theta}")
    if lambda_1 <= 0:
        raise ConfigError(f"lambda_1 must be positive, got {lambda_1}")
    return 2.0 * math.exp(-2.0 * eps * eps / (theta * theta * lambda_1 * lambda_1))


def bound_gap(n: int, gap_profile: GapProfile, eps: float) -> float:
    """Per-eigenvalue bound from the adjacent spectral gap."""
    eps = _check_eps(eps)
    gap = gap_profile.gap_next
    if gap_profile.degenerate or gap <= gap_tolerance(gap_profile.lambda_i):
        raise DegenerateGapError(DEGENERATE_GAP_MESSAGE)
    return math.exp(-2.0 * n * eps * eps / (gap * gap))


def _range_gap_bound(n: int, g: float, eps: float, lambda_1: float) -> float:
    if g <= gap_tolerance(lambda_1):
        raise DegenerateGapError(DEGENERATE_GAP_MESSAGE)
    return math.exp(-2.0 * n * eps * eps / (g * g))


def _lambda_1(spectrum) -> float:
    lam = spectrum.eigenvalues if isinstance(spectrum, Spectrum) else spectrum
    return float(lam[0])


def bound_topk_sum(n: int, spectrum, k: int, eps: float) -> float:
    """Bound for the sum of the top k eigenvalues, via lambda_1 - lambda_{k+1}.

    `spectrum` may be a Spectrum or a descending eigenvalue array.
    """
    eps = _check_eps(eps)
    return _range_gap_bound(n, range_gap_top(spectrum, k), eps, _lambda_1(spectrum))


def bound_tail_sum(n: int, spectrum, k: int, eps: float) -> float:
    """Bound for the sum of eigenvalues k..n, via lambda_k - lambda_n."""
    eps = _check_eps(eps)
    return _range_gap_bound(n, range_gap_tail(spectrum, k), eps, _lambda_1(spectrum))


@dataclass(frozen=True)
class ErrorNormBounds:
    """Replace-one perturbation norm bounds: printed form and the provably
    valid conservative variant (which survives the isotropic-covariance case
    where gap_1p = 0 yet the perturbation is nonzero)."""

    printed: float
    conservative: float
    kind: str


def error_norm_bound(kind: str, cov: CovarianceStats, lip: float, n: int) -> ErrorNormBounds:
    """Closed-form bounds on the spectral norm of the replace-one perturbation.

    printed:       c M^2 lip gap_1p / sqrt(n), c = 6 (distance) or 2 (inner)
    conservative:  12 M^2 lip lambda_1 / sqrt(n)
    """
    if kind not in ("distance", "inner"):
        raise ConfigError(f"kind must be 'distance' or 'inner', got {kind!r}")
    if lip <= 0:
        raise ConfigError(f"Lipschitz constant must be positive, got {lip}")
    m2 = cov.whitened_radius**2
    factor = 6.0 if kind == "distance" else 2.0
    printed = factor * m2 * lip * cov.gap_1p / math.sqrt(n)
    conservative = 12.0 * m2 * lip * cov.lambda_1 / math.sqrt(n)
    return ErrorNormBounds(printed=printed, conservative=conservative, kind=kind)


def _covgap_bound(n: int, cov: CovarianceStats, lip: float, eps: float, denom_factor: float) -> float:
    if cov.gap_1p <= gap_tolerance(cov.lambda_1):
        raise DegenerateGapError(
            "covariance eigenvalue gap lambda_1 - lambda_p is degenerate "
            "(isotropic covariance); the printed bound is vacuous there"
        )
    m4 = cov.whitened_radius**4
    denom = denom_factor * m4 * lip * lip * cov.gap_1p**2
    return math.exp(-float(n) * n * eps * eps / denom)


def bound_distance(n: int, cov: CovarianceStats, lip: float, eps: float) -> float:
    """Covariance-gap bound for distance kernels."""
    return _covgap_bound(n, cov, lip, _check_eps(eps), 18.0)


def bound_inner(n: int, cov: CovarianceStats, lip: float, eps: float) -> float:
    """Covariance-gap bound for smooth inner-product kernels."""
    return _covgap_bound(n, cov, lip, _check_eps(eps), 4.0)


def second_order_gamma(
    n: int,
    cov: CovarianceStats,
    lip: float,
    gap_profile: GapProfile,
    variant: str = "printed",
) -> float:
    """The gamma denominator of the second-order refinement.

    variant="printed" uses the squared-gap sum as printed; variant="alt" uses
    the unsquared resolvent sum, which is what the second-order eigenvalue
    expansion itself produces.
    """
    if variant not in ("printed", "alt"):
        raise ConfigError(f"variant must be 'printed' or 'alt', got {variant!r}")
    if gap_profile.degenerate:
        raise DegenerateGapError(DEGENERATE_GAP_MESSAGE)
    m2 = cov.whitened_radius**2
    first = 6.0 * m2 * lip * cov.gap_1p / math.sqrt(n)
    crowding = gap_profile.inv_gap_sq_sum if variant == "printed" else gap_profile.resolvent_sum
    second = 36.0 * m2 * m2 * lip * lip * (cov.gap_1p**2 / n) * crowding
    return first + second


def bound_second_order(
    n: int,
    cov: CovarianceStats,
    lip: float,
    gap_profile: GapProfile,
    eps: float,
    variant: str = "printed",
) -> float:
    """Second-order refinement exp(-n^2 eps^2 / gamma^2)."""
    eps = _check_eps(eps)
    gamma = second_order_gamma(n, cov, lip, gap_profile, variant)
    if gamma <= 0.0:
        raise DegenerateGapError(
            "second-order denominator gamma is zero (degenerate covariance gap); bound is vacuous"
        )
    return math.exp(-float(n) * n * eps * eps / (gamma * gamma))


def _eigvec_inverse_c(cov: CovarianceStats, lip: float, gap_profile: GapProfile) -> float:
    if gap_profile.degenerate or not math.isfinite(gap_profile.resolvent_sum):
        raise DegenerateGapError(DEGENERATE_GAP_MESSAGE)
    if cov.gap_1p <= gap_tolerance(cov.lambda_1):
        raise DegenerateGapError(
            "covariance eigenvalue gap lambda_1 - lambda_p is degenerate; "
            "the eigenvector bound is vacuous there"
        )
    m4 = cov.whitened_radius**4
    return 18.0 * m4 * lip * lip * gap_profile.resolvent_sum**2 * cov.gap_1p**2


def bound_eigvec_pointwise(
    cov: CovarianceStats, lip: float, gap_profile: GapProfile, eps: float
) -> float:
    """Pointwise eigenvector bound along any unit direction (direction-free)."""
    eps = _check_eps(eps)
    return math.exp(-eps * eps / _eigvec_inverse_c(cov, lip, gap_profile))


def bound_eigvec_uniform(
    n: int, cov: CovarianceStats, lip: float, gap_profile: GapProfile, eps: float
) -> float:
    """Uniform (norm-level) eigenvector bound; raw value can far exceed 1."""
    eps = _check_eps(eps)
    c = 1.0 / _eigvec_inverse_c(cov, lip, gap_profile)
    return 2.0 * math.exp(2.0 * n - c * eps * eps)


# --- report assembly ---------------------------------------------------------

STAT_EIGENVALUE = "eigenvalue"
STAT_TOPK = "topk_sum"
STAT_TAIL = "tail_sum"
STAT_EIGVEC = "eigenvector"


@dataclass(frozen=True)
class BoundQuery:
    """A request for every applicable bound of one statistic over an eps grid.

    `index` is the eigen-order i for eigenvalue/eigenvector statistics and k
    for the top/tail sums.  Optional inputs gate which theorems apply.
    """

    statistic: str
    index: int
    epsilons: tuple[float, ...]
    n: int
    spectrum: Spectrum | None = None
    cov: CovarianceStats | None = None
    lip: float | None = None
    diag_sup_sq: float | None = None
    kernel_kind: str | None = None              # "distance" or "inner"
    theta: float | None = None
    theta_estimated: bool = False

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        if not eps or any(e <= 0 for e in eps):
            raise ConfigError("epsilons must be positive")
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise ConfigError("epsilons must be strictly ascending")
        object.__setattr__(self, "epsilons", eps)


@dataclass(frozen=True)
class BoundRow:
    statistic: str
    index: int
    epsilon: float
    theorem: str
    raw: float
    value: float                # raw clipped to [0, 1]
    vacuous: bool
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class BoundReport:
    rows: tuple[BoundRow, ...]
    metadata: dict = field(default_factory=dict)


def _emit(rows, statistic, index, theorem, epsilons, fn, flags=()):
    for eps in epsilons:
        raw = fn(eps)
        rows.append(
            BoundRow(
                statistic=statistic,
                index=index,
                epsilon=eps,
                theorem=theorem,
                raw=raw,
                value=min(raw, 1.0),
                vacuous=raw >= 1.0,
                flags=tuple(flags),
            )
        )


def evaluate_bounds(query: BoundQuery) -> BoundReport:
    """Evaluate every theorem applicable to the query; skipped theorems are
    recorded in metadata with the precondition that failed."""
    rows: list[BoundRow] = []
    skipped: dict[str, str] = {}
    meta: dict = {
        "statistic": query.statistic,
        "index": query.index,
        "n": query.n,
        "epsilons": list(query.epsilons),
    }
    if query.cov is not None:
        meta.update(
            {
                "whitened_radius": query.cov.whitened_radius,
                "cov_lambda_1": query.cov.lambda_1,
                "cov_lambda_p": query.cov.lambda_p,
                "cov_gap_1p": query.cov.gap_1p,
                "centered": query.cov.centered,
            }
        )
    if query.lip is not None:
        meta["lipschitz"] = query.lip
    if query.diag_sup_sq is not None:
        meta["diag_sup_sq"] = query.diag_sup_sq

    def attempt(theorem: str, fn, flags=()):
        try:
            _emit(rows, query.statistic, query.index, theorem, query.epsilons, fn, flags)
        except DegenerateGapError as exc:
            skipped[theorem] = str(exc)

    covgap = bound_inner if query.kernel_kind == "inner" else bound_distance
    covgap_id = "covgap_inner" if query.kernel_kind == "inner" else "covgap_distance"

    if query.statistic == STAT_EIGENVALUE:
        if query.diag_sup_sq is not None:
            attempt("diag_uniform", lambda e: bound_trace_uniform(query.n, query.diag_sup_sq, e))
        if query.theta is not None and query.spectrum is not None:
            lam1 = float(query.spectrum.eigenvalues[0])
            meta["theta"] = query.theta
            meta["theta_estimated"] = query.theta_estimated
            flags = ("estimated_theta",) if query.theta_estimated else ()
            attempt("theta_top", lambda e: bound_theta(query.theta, lam1, e), flags)
        if query.spectrum is not None:
            profile = gaps(query.spectrum, query.index)
            meta["gap_next"] = None if query.index == query.n else profile.gap_next
            meta["resolvent_sum"] = profile.resolvent_sum
            meta["inv_gap_sq_sum"] = profile.inv_gap_sq_sum
            if query.index < query.n:
                attempt("adjacent_gap", lambda e: bound_gap(query.n, profile, e))
            else:
                skipped["adjacent_gap"] = "gap to the next eigenvalue undefined at i = n"
            if query.cov is not None and query.lip is not None:
                attempt(covgap_id, lambda e: covgap(query.n, query.cov, query.lip, e))
                for variant, label in (("printed", "covgap_second_order"), ("alt", "covgap_second_order_alt")):
                    try:
                        gamma = second_order_gamma(query.n, query.cov, query.lip, profile, variant)
                        meta[f"gamma_{variant}"] = gamma
                    except DegenerateGapError as exc:
                        skipped[label] = str(exc)
                        continue
                    attempt(
                        label,
                        lambda e, v=variant: bound_second_order(
                            query.n, query.cov, query.lip, profile, e, v
                        ),
                    )
        elif query.cov is not None and query.lip is not None:
            attempt(covgap_id, lambda e: covgap(query.n, query.cov, query.lip, e))
    elif query.statistic in (STAT_TOPK, STAT_TAIL):
        if query.spectrum is None:
            raise ConfigError(f"{query.statistic} bounds need a spectrum")
        if query.statistic == STAT_TOPK:
            meta["range_gap"] = range_gap_top(query.spectrum, query.index)
            attempt("topk_gap", lambda e: bound_topk_sum(query.n, query.spectrum, query.index, e))
        else:
            meta["range_gap"] = range_gap_tail(query.spectrum, query.index)
            attempt("tail_gap", lambda e: bound_tail_sum(query.n, query.spectrum, query.index, e))
    elif query.statistic == STAT_EIGVEC:
        if query.spectrum is None or query.cov is None or query.lip is None:
            raise ConfigError("eigenvector bounds need spectrum, covariance stats, and a Lipschitz constant")
        profile = gaps(query.spectrum, query.index)
        meta["resolvent_sum"] = profile.resolvent_sum
        try:
            meta["eigvec_c"] = 1.0 / _eigvec_inverse_c(query.cov, query.lip, profile)
            meta["eigvec_exponent_offset"] = 2 * query.n
        except DegenerateGapError:
            pass
        attempt(
            "eigvec_pointwise",
            lambda e: bound_eigvec_pointwise(query.cov, query.lip, profile, e),
            flags=("direction_free",),
        )
        attempt(
            "eigvec_uniform",
            lambda e: bound_eigvec_uniform(query.n, query.cov, query.lip, profile, e),
        )
    else:
        raise ConfigError(f"unknown statistic {query.statistic!r}")

    if skipped:
        meta["skipped_theorems"] = skipped
    return BoundReport(rows=tuple(rows), metadata=meta)
