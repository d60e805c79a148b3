"""Symmetric eigendecomposition, gap statistics, principal submatrices, and
the replace-one perturbation machinery that ground-truths every inequality.

All eigen-order and sample indices at this API are 1-based, matching the
mathematical convention used throughout the reports.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dataset import SampleSet
from .errors import DataError, DegeneracyError, DegenerateGapError, ValidityConditionError
from .kernels import DISTANCE, ONE_OVER_N, GramMatrix, KernelSpec, gram

ORTHONORMALITY_TOL = 1e-8
RECONSTRUCTION_RTOL = 1e-7


def gap_tolerance(lambda_1: float) -> float:
    """Below this, a spectral gap is treated as degenerate (scale-aware)."""
    return 1e-10 * (1.0 + abs(lambda_1))


def interlacing_tolerance(lambda_1: float) -> float:
    return 1e-9 * (1.0 + abs(lambda_1))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Descending eigenvalues with orthonormal eigenvectors (column i <-> lambda_i)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def eigenvalue(self, i: int) -> float:
        """1-based accessor."""
        return float(self.eigenvalues[i - 1])

    def eigenvector(self, i: int) -> np.ndarray:
        """1-based accessor."""
        return self.eigenvectors[:, i - 1]


@dataclass(frozen=True)
class GapProfile:
    """Gap statistics of a spectrum around eigen-order i (1-based).

    `resolvent_sum` is sum_{j != i} 1/|lambda_i - lambda_j|; `inv_gap_sq_sum`
    uses squared differences.  Both are +inf and `degenerate` is set when any
    pairwise gap at i falls below the scale-aware tolerance.
    """

    index: int
    n: int
    lambda_i: float
    _gap_next: float | None
    resolvent_sum: float
    inv_gap_sq_sum: float
    degenerate: bool

    @property
    def gap_next(self) -> float:
        if self._gap_next is None:
            raise DegenerateGapError(
                f"gap to the next eigenvalue is undefined for i = n = {self.index}"
            )
        return self._gap_next


class InterlacingResult(NamedTuple):
    ok: bool
    max_violation: float


@dataclass(frozen=True, eq=False)
class PerturbationPair:
    """A Gram matrix and its replace-one perturbation.

    `e` = perturbed - original is symmetric and nonzero only in the replaced
    row/column; `spectral_norm_e` is computed exactly from that rank-<=2
    structure (dense fallback for tiny matrices).
    """

    original: GramMatrix
    perturbed: GramMatrix
    e: np.ndarray
    spectral_norm_e: float
    replaced_index: int


def _as_matrix(g) -> np.ndarray:
    a = g.entries if isinstance(g, GramMatrix) else np.asarray(g, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DataError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DataError("matrix entries must be finite")
    return a


def eig_sym(g: GramMatrix | np.ndarray) -> Spectrum:
    """Full symmetric eigendecomposition, eigenvalues descending.

    Sign convention: each eigenvector's entry of largest magnitude is positive
    (ties resolved at the lowest index), so decompositions are reproducible.
    """
    a = _as_matrix(g)
    try:
        vals, vecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        scale = float(np.linalg.norm(a, ord="fro"))
        raise DegeneracyError(
            f"symmetric eigensolver failed to converge (n = {a.shape[0]}, "
            f"frobenius norm = {scale:.6g}): {exc}"
        ) from exc
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    anchor = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[anchor, np.arange(vecs.shape[1])])
    signs[signs == 0] = 1.0
    vecs *= signs
    ortho = float(np.max(np.abs(vecs.T @ vecs - np.eye(a.shape[0]))))
    if ortho > ORTHONORMALITY_TOL:
        raise DegeneracyError(f"eigenvectors lost orthonormality: max deviation {ortho:.3e}")
    fro = float(np.linalg.norm(a, ord="fro"))
    recon = float(np.linalg.norm(a - (vecs * vals) @ vecs.T, ord="fro"))
    if recon > RECONSTRUCTION_RTOL * (1.0 + fro):
        raise DegeneracyError(f"eigendecomposition reconstruction error {recon:.3e} too large")
    vals.flags.writeable = False
    vecs.flags.writeable = False
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)


def gaps(spec: Spectrum, i: int) -> GapProfile:
    """Gap statistics of `spec` around the i-th eigenvalue (1-based)."""
    return gaps_from_eigenvalues(spec.eigenvalues, i)


def gaps_from_eigenvalues(eigenvalues: np.ndarray, i: int) -> GapProfile:
    """Like `gaps`, but from a descending eigenvalue array alone."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    n = lam.shape[0]
    if not 1 <= i <= n:
        raise DataError(f"eigen-order i must be in 1..{n}, got {i}")
    tol = gap_tolerance(float(lam[0]))
    diffs = np.abs(lam[i - 1] - np.delete(lam, i - 1))
    degenerate = bool(diffs.size) and bool(np.min(diffs) < tol)
    if degenerate:
        resolvent = float("inf")
        inv_sq = float("inf")
    else:
        resolvent = float(np.sum(1.0 / diffs)) if diffs.size else 0.0
        inv_sq = float(np.sum(1.0 / diffs**2)) if diffs.size else 0.0
    gap_next = float(lam[i - 1] - lam[i]) if i < n else None
    return GapProfile(
        index=i,
        n=n,
        lambda_i=float(lam[i - 1]),
        _gap_next=gap_next,
        resolvent_sum=resolvent,
        inv_gap_sq_sum=inv_sq,
        degenerate=degenerate,
    )


def _eigenvalues_of(spec_or_values) -> np.ndarray:
    if isinstance(spec_or_values, Spectrum):
        return spec_or_values.eigenvalues
    return np.asarray(spec_or_values, dtype=np.float64)


def range_gap_top(spec: Spectrum | np.ndarray, k: int) -> float:
    """lambda_1 - lambda_{k+1} (1-based k, requires k < n)."""
    lam = _eigenvalues_of(spec)
    if not 1 <= k < lam.shape[0]:
        raise DataError(f"k must be in 1..{lam.shape[0] - 1}, got {k}")
    return float(lam[0] - lam[k])


def range_gap_tail(spec: Spectrum | np.ndarray, k: int) -> float:
    """lambda_k - lambda_n (1-based k)."""
    lam = _eigenvalues_of(spec)
    if not 1 <= k <= lam.shape[0]:
        raise DataError(f"k must be in 1..{lam.shape[0]}, got {k}")
    return float(lam[k - 1] - lam[-1])


def principal_submatrix(g: GramMatrix, drop: int) -> GramMatrix:
    """Remove row/column `drop` (1-based), preserving the scaling tag."""
    a = g.entries
    n = a.shape[0]
    if n < 2:
        raise DataError("need n >= 2 to take a principal submatrix")
    if not 1 <= drop <= n:
        raise DataError(f"drop index must be in 1..{n}, got {drop}")
    keep = [j for j in range(n) if j != drop - 1]
    return GramMatrix(entries=a[np.ix_(keep, keep)], scaling=g.scaling, kernel=g.kernel)


def interlacing_check(parent: Spectrum, child: Spectrum) -> InterlacingResult:
    """Check lambda_i(A) >= mu_i(B) >= lambda_{i+1}(A) for all i.

    Returns (ok, worst signed violation); negative violation means slack.
    """
    if child.n != parent.n - 1:
        raise DataError(
            f"child must have dimension {parent.n - 1}, got {child.n}"
        )
    lam = parent.eigenvalues
    mu = child.eigenvalues
    upper = mu - lam[:-1]       # > 0 violates mu_i <= lambda_i
    lower = lam[1:] - mu        # > 0 violates mu_i >= lambda_{i+1}
    worst = float(max(np.max(upper), np.max(lower)))
    tol = interlacing_tolerance(float(lam[0]))
    return InterlacingResult(ok=worst <= tol, max_violation=worst)


def _replace_one_norm(e: np.ndarray, idx0: int) -> float:
    """Spectral norm of a symmetric matrix supported on one row/column.

    On span{e_idx, w} the matrix acts as [[a, |w|], [|w|, 0]], whose extreme
    eigenvalues are (a +/- sqrt(a^2 + 4|w|^2))/2.
    """
    a = float(e[idx0, idx0])
    w = e[:, idx0].copy()
    w[idx0] = 0.0
    wn = float(np.linalg.norm(w))
    return 0.5 * (abs(a) + float(np.hypot(a, 2.0 * wn)))


def perturb_replace(
    s: SampleSet,
    spec: KernelSpec,
    index: int,
    replacement: np.ndarray,
    scaling: str = ONE_OVER_N,
) -> PerturbationPair:
    """Replace sample `index` (1-based) and return the Gram matrix pair."""
    replacement = np.asarray(replacement, dtype=np.float64)
    if replacement.shape != (s.p,):
        raise DataError(
            f"replacement must have shape ({s.p},), got {replacement.shape}"
        )
    if not 1 <= index <= s.n:
        raise DataError(f"sample index must be in 1..{s.n}, got {index}")
    original = gram(s, spec, scaling)
    idx0 = index - 1

    def row_against(point: np.ndarray) -> np.ndarray:
        if spec.kind == DISTANCE:
            diff = s.rows - point
            t = np.sum(diff * diff, axis=1)
            t[idx0] = 0.0  # kernel argument at the replaced position is k(x', x')
        else:
            t = s.rows @ point
            t[idx0] = float(point @ point)
        row = np.asarray(spec.profile(t), dtype=np.float64)
        if not np.all(np.isfinite(row)):
            j = int(np.argwhere(~np.isfinite(row))[0])
            raise DataError(f"kernel value is not finite at pair ({index}, {j + 1})")
        return row / s.n if scaling == ONE_OVER_N else row

    # both rows via the same code path, so an identity replacement gives E = 0
    delta = row_against(replacement) - row_against(s.rows[idx0])
    e = np.zeros_like(original.entries)
    e[idx0, :] = delta
    e[:, idx0] = delta
    perturbed = GramMatrix(entries=original.entries + e, scaling=scaling, kernel=spec)
    if s.n < 4:
        norm_e = float(np.max(np.abs(np.linalg.eigvalsh(e))))
    else:
        norm_e = _replace_one_norm(e, idx0)
    return PerturbationPair(
        original=original,
        perturbed=perturbed,
        e=e,
        spectral_norm_e=norm_e,
        replaced_index=index,
    )


def sign_align(v: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Flip `v` so it has nonnegative inner product with `reference`."""
    return -v if float(v @ reference) < 0.0 else v


def eigvec_first_order(
    base: Spectrum,
    e: np.ndarray,
    i: int,
    allow_invalid: bool = False,
) -> np.ndarray:
    """First-order eigenvector expansion around `base` at eigen-order i (1-based):

        u_i + sum_{j != i} (u_j . E u_i) / (lambda_j - lambda_i) * u_j

    With A the matrix behind `base`, this predicts the i-th eigenvector of
    A - e; pass -e to predict for A + e.  Requires the perturbation norm to be
    below half the distance from lambda_i to the rest of the spectrum; with
    `allow_invalid` that condition only warns.
    """
    e = _as_matrix(e)
    n = base.n
    if e.shape != (n, n):
        raise DataError(f"perturbation must have shape ({n}, {n}), got {e.shape}")
    if not 1 <= i <= n:
        raise DataError(f"eigen-order i must be in 1..{n}, got {i}")
    lam = base.eigenvalues
    denom = lam - lam[i - 1]
    others = np.abs(np.delete(denom, i - 1))
    min_gap = float(np.min(others)) if others.size else float("inf")
    if min_gap < gap_tolerance(float(lam[0])):
        raise DegenerateGapError(
            f"eigenvalue {i} is degenerate (min gap {min_gap:.3e}); the expansion "
            "requires the perturbation norm below half the distance to the rest "
            "of the spectrum"
        )
    norm_e = float(np.max(np.abs(np.linalg.eigvalsh(e)))) if n else 0.0
    if norm_e >= 0.5 * min_gap:
        msg = (
            f"perturbation norm {norm_e:.6g} is not below half the spectral "
            f"distance {0.5 * min_gap:.6g} at eigenvalue {i}"
        )
        if not allow_invalid:
            raise ValidityConditionError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    u_i = base.eigenvectors[:, i - 1]
    coeffs = base.eigenvectors.T @ (e @ u_i)
    with np.errstate(divide="ignore", invalid="ignore"):
        coeffs = np.where(np.arange(n) == i - 1, 0.0, coeffs / denom)
    predicted = u_i + base.eigenvectors @ coeffs
    return sign_align(predicted, u_i)
