"""Exact simulation of fractional Brownian motion and model path assembly.

Paths are synthesized by circulant embedding of the fractional Gaussian
noise covariance (Davies-Harte): the 2m-periodic embedding of the increment
covariance is diagonalized by FFT, giving exact Gaussian increments in
O(m log m).  If the embedding is not nonnegative definite the sampler falls
back to a dense Cholesky factorization (m <= 2048).  hurst = 1/2 short cuts
to i.i.d. increments.

Randomness is drawn from counter-based Philox streams keyed by the caller's
seed tuple, so replicas can run in parallel with reproducible output.  One
stream per replica is used; within a replica the common path occupies the
first row of the draw block and the i.i.d. paths the following rows, so a
path's draws do not depend on how many paths follow it.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ValidationError
from .model import ModelSpec, drift_counts

__all__ = ["Grid", "Path", "fbm_cov", "sample_fbm", "assemble_model_paths",
           "path_supremum", "substream"]

CHOLESKY_MAX = 2048


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [0, tmax] with m intervals (m + 1 points)."""

    tmax: float
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError("grid must have at least one interval")
        if not self.tmax > 0:
            raise ValidationError("tmax must be positive")

    @property
    def mesh(self) -> float:
        return self.tmax / self.m

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.tmax, self.m + 1)


@dataclass(frozen=True)
class Path:
    """Sampled path on a grid; values[0] is pinned at 0."""

    grid: Grid
    values: np.ndarray
    method: str = "circulant"

    def __post_init__(self):
        if len(self.values) != self.grid.m + 1:
            raise ValidationError("value count must equal grid points")
        if self.values[0] != 0.0:
            raise ValidationError("a centered self-similar path starts at 0")


def fbm_cov(s: float, t: float, hurst: float) -> float:
    """Covariance (s^2h + t^2h - |s-t|^2h) / 2 of fractional Brownian motion."""
    if s < 0 or t < 0:
        raise DomainError("times must be nonnegative")
    if not 0.0 < hurst < 1.0:
        raise DomainError("hurst must lie in (0, 1)")
    h2 = 2.0 * hurst
    return 0.5 * (s ** h2 + t ** h2 - abs(s - t) ** h2)


def substream(seed, *key) -> np.random.Generator:
    """Philox generator for the stream identified by (seed, *key).

    ``seed`` may be an int, a tuple of ints, a SeedSequence, or anything
    with a ``standard_normal`` method (returned unchanged, ignoring the
    key; this is the noise-injection hook used by tests).
    """
    if hasattr(seed, "standard_normal"):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        entropy = tuple(np.atleast_1d(seed.entropy).tolist())
    elif isinstance(seed, (tuple, list)):
        entropy = tuple(int(s) for s in seed)
    else:
        entropy = (int(seed),)
    ss = np.random.SeedSequence(entropy + tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


# --- fractional Gaussian noise -------------------------------------------

_eig_cache: dict = {}
_eig_lock = threading.Lock()


def _fgn_spectrum(hurst: float, m: int):
    """sqrt(lambda / 2m) for the 2m circulant embedding, or None if not PSD."""
    key = (hurst, m)
    with _eig_lock:
        hit = _eig_cache.get(key)
    if hit is not None:
        return hit
    k = np.arange(m + 1, dtype=float)
    h2 = 2.0 * hurst
    rho = 0.5 * ((k + 1.0) ** h2 - 2.0 * k ** h2 + np.abs(k - 1.0) ** h2)
    lam = np.fft.fft(np.concatenate([rho, rho[-2:0:-1]])).real
    if lam.min() < -1e-9:
        coef = None
    else:
        coef = np.sqrt(np.maximum(lam, 0.0) / (2.0 * m))
    with _eig_lock:
        _eig_cache[key] = coef
    return coef


def _fgn_block(hurst: float, m: int, rng: np.random.Generator, count: int):
    """(count, m) unit-mesh fGn increments and the method that produced them.

    Draw layout per row is fixed (2m normals for the circulant path, m for
    hurst = 1/2), so row r of a block is the same realization regardless of
    ``count``.
    """
    if hurst == 0.5:
        return rng.standard_normal((count, m)), "iid"
    coef = _fgn_spectrum(hurst, m)
    if coef is None:
        return _fgn_cholesky(hurst, m, rng, count), "cholesky"
    v = rng.standard_normal((count, 2 * m))
    z = np.empty((count, 2 * m), dtype=complex)
    z[:, 0] = v[:, 0]
    z[:, m] = v[:, 1]
    z[:, 1:m] = (v[:, 2::2] + 1j * v[:, 3::2]) / np.sqrt(2.0)
    z[:, m + 1:] = np.conj(z[:, 1:m][:, ::-1])
    z *= coef
    return np.fft.fft(z, axis=1).real[:, :m], "circulant"


def _fgn_cholesky(hurst: float, m: int, rng: np.random.Generator, count: int):
    if m > CHOLESKY_MAX:
        raise DomainError(
            f"circulant embedding failed and m={m} exceeds the Cholesky "
            f"fallback limit {CHOLESKY_MAX}")
    k = np.arange(m, dtype=float)
    h2 = 2.0 * hurst
    lag = np.abs(k[:, None] - k[None, :])
    cov = 0.5 * ((lag + 1.0) ** h2 - 2.0 * lag ** h2 + np.abs(lag - 1.0) ** h2)
    chol = np.linalg.cholesky(cov)
    return rng.standard_normal((count, m)) @ chol.T


def _fbm_values(hurst: float, grid: Grid, rng: np.random.Generator,
                count: int):
    """(count, m+1) fBm values on the grid, first column zero."""
    inc, method = _fgn_block(hurst, grid.m, rng, count)
    out = np.empty((count, grid.m + 1))
    out[:, 0] = 0.0
    np.cumsum(inc, axis=1, out=out[:, 1:])
    out[:, 1:] *= grid.mesh ** hurst
    return out, method


def sample_fbm(hurst: float, grid: Grid, seed) -> Path:
    """Exact fractional Brownian motion sample on a grid.

    Deterministic given (hurst, grid, seed).  The returned path records
    which synthesis method ran ('circulant', 'cholesky', or 'iid').
    """
    if not 0.0 < hurst < 1.0:
        raise DomainError("hurst must lie in (0, 1)")
    rng = substream(seed)
    values, method = _fbm_values(hurst, grid, rng, 1)
    return Path(grid, values[0], method)


def combined_values(model: ModelSpec, n: int, grid: Grid,
                    rng: np.random.Generator, drift_values=None):
    """(n, m+1) values of X_i + sigma0 X - c_i t^beta for one replica.

    The common path is drawn first (index H0), then the n i.i.d. paths
    (index H).  Drifts are assigned to contiguous blocks of indices in
    drift-set order unless ``drift_values`` supplies an explicit per-index
    assignment.
    """
    common, _ = _fbm_values(model.H0, grid, rng, 1)
    own, method = _fbm_values(model.H, grid, rng, n)
    if drift_values is None:
        counts = drift_counts(model.drift, n)
        cvec = np.repeat(model.drift.values, counts)
    else:
        cvec = np.asarray(drift_values, dtype=float)
        if cvec.shape != (n,):
            raise ValidationError("drift_values must have length n")
    trend = grid.times ** model.beta
    own += model.sigma0 * common[0]
    own -= cvec[:, None] * trend[None, :]
    return own, method


def assemble_model_paths(model: ModelSpec, n: int, grid: Grid, seed):
    """Draw one replica of the n dependent trend-adjusted paths."""
    if n < 1:
        raise ValidationError("n must be at least 1")
    rng = substream(seed)
    values, method = combined_values(model, n, grid, rng)
    return [Path(grid, values[i], method) for i in range(n)]


def path_supremum(path: Path) -> float:
    """Maximum over the grid; a lower bound for the continuous supremum."""
    return float(np.max(path.values))
