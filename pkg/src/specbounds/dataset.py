"""Data ingestion, synthetic Gaussian samples, and covariance-model statistics.

The covariance statistics (extreme eigenvalues of the sample second-moment
matrix, their gap, and the whitened radius M) feed every covariance-gap
bound downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, ParseError, SingularCovarianceError

# Relative threshold below which the smallest covariance eigenvalue is
# treated as zero; scale-invariant by construction.
SINGULAR_TOL_FACTOR = 1e-10


@dataclass(frozen=True, eq=False)
class SampleSet:
    """n samples in R^p with provenance (file path or generator tag)."""

    rows: np.ndarray
    provenance: str

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        if rows.ndim != 2:
            raise DataError(f"sample array must be 2-D, got shape {rows.shape}")
        if rows.shape[0] < 2:
            raise DataError(f"need at least 2 samples, got n = {rows.shape[0]} (n < 2)")
        if rows.shape[1] < 1:
            raise DataError("need at least one feature column (p >= 1)")
        if not np.all(np.isfinite(rows)):
            raise DataError("sample entries must all be finite")
        rows = rows.copy()
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def p(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True, eq=False)
class CovarianceStats:
    """Second-moment/covariance matrix of a sample with derived statistics.

    `sigma` is (1/n) X^T X by default (the whitening model treats data as
    zero-mean); with `centered` the mean is subtracted first.  `whitened_radius`
    is max_i ||sigma^{-1/2} x_i||_2 over the (optionally centered) rows.
    """

    sigma: np.ndarray
    eigs_sigma: np.ndarray      # descending
    gap_1p: float               # lambda_1(sigma) - lambda_p(sigma)
    whitened_radius: float
    centered: bool

    @property
    def lambda_1(self) -> float:
        return float(self.eigs_sigma[0])

    @property
    def lambda_p(self) -> float:
        return float(self.eigs_sigma[-1])

    @property
    def p(self) -> int:
        return self.sigma.shape[0]


def _parse_line(text: str, lineno: int) -> list[float]:
    parts = text.split(",") if "," in text else text.split()
    values = []
    for tok in parts:
        tok = tok.strip()
        if not tok:
            raise ParseError(f"line {lineno}: empty field")
        try:
            v = float(tok)
        except ValueError:
            raise ParseError(f"line {lineno}: non-numeric token {tok!r}") from None
        if not np.isfinite(v):
            raise ParseError(f"line {lineno}: non-finite value {tok!r}")
        values.append(v)
    return values


def load_csv(path: str, header: bool = False) -> SampleSet:
    """Load samples from a comma- or whitespace-separated text file.

    One sample per line; `header` skips the first line.  Raises ParseError
    naming the offending (1-based) line on ragged rows or bad tokens, and
    DataError when fewer than two samples remain.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    start = 1 if header else 0
    rows = []
    width = None
    for offset, raw in enumerate(lines[start:], start=start + 1):
        if not raw.strip():
            continue
        values = _parse_line(raw, offset)
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise ParseError(
                f"line {offset}: expected {width} fields, got {len(values)} (ragged row)"
            )
        rows.append(values)
    if len(rows) < 2:
        raise DataError(f"{path}: need at least 2 samples, got n = {len(rows)} (n < 2)")
    return SampleSet(rows=np.array(rows, dtype=np.float64), provenance=str(path))


def load_labels(path: str) -> np.ndarray:
    """Load a one-column file of +/-1 labels."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    labels = []
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        values = _parse_line(raw, lineno)
        if len(values) != 1:
            raise ParseError(f"line {lineno}: expected a single label, got {len(values)}")
        if values[0] not in (-1.0, 1.0):
            raise ParseError(f"line {lineno}: label must be -1 or +1, got {values[0]!r}")
        labels.append(values[0])
    if not labels:
        raise DataError(f"{path}: no labels found")
    return np.array(labels, dtype=np.float64)


def load_csv_with_labels(path: str, label_col: str) -> tuple[SampleSet, np.ndarray]:
    """Load a headered CSV whose column `label_col` carries +/-1 labels."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if not lines:
        raise DataError(f"{path}: empty file")
    header = [tok.strip() for tok in (lines[0].split(",") if "," in lines[0] else lines[0].split())]
    if label_col not in header:
        raise DataError(f"{path}: no column named {label_col!r} in header {header}")
    col = header.index(label_col)
    rows, labels = [], []
    width = len(header)
    for offset, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        values = _parse_line(raw, offset)
        if len(values) != width:
            raise ParseError(
                f"line {offset}: expected {width} fields, got {len(values)} (ragged row)"
            )
        y = values.pop(col)
        if y not in (-1.0, 1.0):
            raise ParseError(f"line {offset}: label must be -1 or +1, got {y!r}")
        labels.append(y)
        rows.append(values)
    if len(rows) < 2:
        raise DataError(f"{path}: need at least 2 samples, got n = {len(rows)} (n < 2)")
    samples = SampleSet(rows=np.array(rows, dtype=np.float64), provenance=str(path))
    return samples, np.array(labels, dtype=np.float64)


def gen_gaussian(n: int, p: int, seed: int) -> SampleSet:
    """Draw n standard-normal samples in R^p, deterministic in the seed."""
    if n < 2:
        raise DataError(f"need at least 2 samples, got n = {n} (n < 2)")
    if p < 1:
        raise DataError("dimension p must be >= 1")
    rng = np.random.default_rng(seed)
    rows = rng.standard_normal((n, p))
    return SampleSet(rows=rows, provenance=f"gaussian(n={n}, p={p}, seed={seed})")


def covariance_stats(s: SampleSet, centered: bool = False) -> CovarianceStats:
    """Compute sigma, its extreme eigenvalues, their gap, and the whitened radius.

    Raises SingularCovarianceError when lambda_p(sigma) falls at or below the
    relative tolerance SINGULAR_TOL_FACTOR * lambda_1(sigma).
    """
    x = s.rows - s.rows.mean(axis=0) if centered else s.rows
    sigma = (x.T @ x) / s.n
    sigma = 0.5 * (sigma + sigma.T)
    eigvals, eigvecs = np.linalg.eigh(sigma)
    eigvals = eigvals[::-1].copy()
    eigvecs = eigvecs[:, ::-1]
    lam1, lamp = float(eigvals[0]), float(eigvals[-1])
    tol = SINGULAR_TOL_FACTOR * max(lam1, 0.0)
    if lamp <= tol:
        raise SingularCovarianceError(
            f"sample covariance is singular: lambda_p = {lamp:.6g} <= tolerance "
            f"{tol:.6g} (nonsingular covariance required)"
        )
    # Symmetric inverse square root, eigenvalues clipped at the tolerance.
    inv_sqrt = eigvecs @ np.diag(1.0 / np.sqrt(np.maximum(eigvals, tol))) @ eigvecs.T
    whitened = x @ inv_sqrt.T
    radius = float(np.sqrt(np.max(np.sum(whitened * whitened, axis=1))))
    eigvals.flags.writeable = False
    sigma.flags.writeable = False
    return CovarianceStats(
        sigma=sigma,
        eigs_sigma=eigvals,
        gap_1p=float(lam1 - lamp),
        whitened_radius=radius,
        centered=centered,
    )


def whitened_norm(cov: CovarianceStats, x: np.ndarray) -> float:
    """||sigma^{-1/2} x||_2 for one extra point under `cov`'s whitening."""
    eigvals = cov.eigs_sigma
    tol = SINGULAR_TOL_FACTOR * max(float(eigvals[0]), 0.0)
    vals, vecs = np.linalg.eigh(cov.sigma)
    inv_sqrt = vecs @ np.diag(1.0 / np.sqrt(np.maximum(vals, tol))) @ vecs.T
    return float(np.linalg.norm(inv_sqrt @ np.asarray(x, dtype=np.float64)))
