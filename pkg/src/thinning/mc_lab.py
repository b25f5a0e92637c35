"""Monte Carlo laboratory for spectral maxima of random matrices.

GUE and complex Wishart spectra are drawn from their tridiagonal beta = 2
models (same joint eigenvalue law as the dense ensembles, O(N) storage)
and diagonalized by Sturm bisection. The spectral maximum of ``k``
matrices keeps the ``N`` largest of the pooled ``kN`` eigenvalues; pooling
many such maxima gives an empirical CDF to compare with
``max(0, kF - (k - 1))``.

Randomness: matrix ``j`` of draw ``d`` uses its own generator seeded by
``SeedSequence(seed, spawn_key=(d, j))``, so results are a pure function of
``(ensemble, seed, draws)`` whatever the batching or thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .distributions import MarchenkoPastur, ParentLaw, Semicircle
from .errors import DomainError, ParameterError, ResourceGuardError
from .free_max import free_max_power, max_density
from .tridiagonal import eigvals_above, eigvalsh_tridiagonal

__all__ = [
    "GUE", "WISHART", "DEFAULT_BUDGET", "MAX_N",
    "EnsembleSpec", "SampleBatch", "EmpiricalCDF", "MaxSimReport",
    "matrix_seed", "tridiagonal_model", "sample_gue_spectrum",
    "sample_wishart_spectrum", "sample_dense_spectrum", "sample_batch",
    "matrix_max", "ks_distance", "max_spectra", "empirical_vs_analytic",
]

GUE = "gue"
WISHART = "wishart"
MAX_N = 100_000
DEFAULT_BUDGET = 2 * 10**8
_DENSE_MAX_N = 64
_CHUNK_ENTRIES = 2 * 10**5


@dataclass(frozen=True)
class EnsembleSpec:
    """GUE(N) with weight exp(-N/2 Tr H^2), or Wishart(N, r) scaled to unit mean."""

    kind: str
    N: int
    r: float | None = None

    def __post_init__(self):
        if self.kind not in (GUE, WISHART):
            raise ParameterError(f"unknown ensemble {self.kind!r}")
        if not (isinstance(self.N, (int, np.integer)) and 2 <= self.N <= MAX_N):
            raise DomainError(f"N must be an integer in [2, {MAX_N}], got {self.N}")
        if self.kind == WISHART and not (self.r is not None and 0 < self.r < 1):
            raise ParameterError(f"Wishart needs 0 < r < 1, got {self.r}")

    @classmethod
    def gue(cls, N: int) -> EnsembleSpec:
        return cls(GUE, N)

    @classmethod
    def wishart(cls, N: int, r: float) -> EnsembleSpec:
        return cls(WISHART, N, float(r))

    @property
    def law(self) -> ParentLaw:
        """Limiting spectral law as ``N -> inf``."""
        return Semicircle() if self.kind == GUE else MarchenkoPastur(self.r)


def matrix_seed(seed: int, draw: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(int(seed), spawn_key=(int(draw), int(index)))


def tridiagonal_model(spec: EnsembleSpec, rng: np.random.Generator):
    """Diagonal and off-diagonal of one tridiagonal matrix from ``spec``."""
    N = spec.N
    if spec.kind == GUE:
        # Hermite beta=2: N(0, 1) diagonal, chi_{2(N-1)}, ..., chi_2 over sqrt(2)
        diag = rng.standard_normal(N)
        off = np.sqrt(0.5 * rng.chisquare(2.0 * np.arange(N - 1, 0, -1)))
        return diag / math.sqrt(N), off / math.sqrt(N)
    # Laguerre beta=2: B lower bidiagonal with chi_{2(M-i)} diagonal and
    # chi_{2(N-1-i)} subdiagonal; the spectrum of B B^T / 2M is the Wishart one
    M = N / spec.r
    b = np.sqrt(rng.chisquare(2.0 * (M - np.arange(N))))
    c = np.sqrt(rng.chisquare(2.0 * np.arange(N - 1, 0, -1)))
    diag = b * b
    diag[1:] += c * c
    return diag / (2 * M), b[:-1] * c / (2 * M)


def _single(spec, seed):
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    d, e = tridiagonal_model(spec, rng)
    return eigvalsh_tridiagonal(d, e)


def sample_gue_spectrum(N: int, seed: int) -> np.ndarray:
    """Sorted eigenvalues of one N x N GUE matrix (semicircle on [-2, 2])."""
    return _single(EnsembleSpec.gue(N), seed)


def sample_wishart_spectrum(N: int, r: float, seed: int) -> np.ndarray:
    """Sorted eigenvalues of one complex Wishart matrix, ratio ``r = N/M``."""
    return _single(EnsembleSpec.wishart(N, r), seed)


def sample_dense_spectrum(spec: EnsembleSpec, seed: int) -> np.ndarray:
    """Reference sampler: build the dense matrix and call LAPACK (``N <= 64``)."""
    N = spec.N
    if N > _DENSE_MAX_N:
        raise DomainError(f"dense reference sampler is limited to N <= {_DENSE_MAX_N}")
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    if spec.kind == GUE:
        G = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        H = (G + G.conj().T) / (2 * math.sqrt(N))
        return np.linalg.eigvalsh(H)
    M = int(round(N / spec.r))
    X = (rng.standard_normal((N, M)) + 1j * rng.standard_normal((N, M))) / math.sqrt(2)
    return np.linalg.eigvalsh(X @ X.conj().T / M)


@dataclass
class SampleBatch:
    eigenvalues: np.ndarray  # (draws, N), each row sorted
    seed: int
    spec: EnsembleSpec


def _tridiagonals(spec: EnsembleSpec, seed: int, draw: int, count: int):
    d = np.empty((count, spec.N))
    e = np.empty((count, spec.N - 1))
    for j in range(count):
        rng = np.random.default_rng(matrix_seed(seed, draw, j))
        d[j], e[j] = tridiagonal_model(spec, rng)
    return d, e


def sample_batch(spec: EnsembleSpec, draws: int, seed: int) -> SampleBatch:
    """``draws`` independent spectra, matrix ``(d, 0)`` for draw ``d``."""
    if draws < 1:
        raise DomainError("draws must be >= 1")
    d, e = [], []
    for i in range(draws):
        di, ei = _tridiagonals(spec, seed, i, 1)
        d.append(di)
        e.append(ei)
    vals = eigvalsh_tridiagonal(np.vstack(d), np.vstack(e))
    return SampleBatch(vals, int(seed), spec)


def matrix_max(batches) -> np.ndarray:
    """Spectrum of the spectral maximum: the ``N`` largest pooled eigenvalues."""
    arrays = [np.asarray(b, dtype=float).ravel() for b in batches]
    if not arrays:
        raise DomainError("need at least one spectrum")
    N = arrays[0].size
    if any(a.size != N for a in arrays):
        raise DomainError("all spectra must have the same size")
    pooled = np.sort(np.concatenate(arrays))
    return pooled[-N:]


@dataclass(frozen=True)
class EmpiricalCDF:
    """Right-continuous step CDF of a sample."""

    sorted_values: np.ndarray

    @classmethod
    def from_sample(cls, values) -> EmpiricalCDF:
        v = np.sort(np.asarray(values, dtype=float).ravel())
        if v.size == 0:
            raise DomainError("empirical CDF needs a non-empty sample")
        return cls(v)

    @property
    def n(self) -> int:
        return self.sorted_values.size

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return (np.searchsorted(self.sorted_values, x, side="right") / self.n)[()]

    __call__ = cdf


def ks_distance(e: EmpiricalCDF, analytic) -> float:
    """Kolmogorov-Smirnov distance, using both one-sided empirical limits."""
    if not isinstance(e, EmpiricalCDF):
        e = EmpiricalCDF.from_sample(e)
    F = np.asarray(analytic(e.sorted_values), dtype=float)
    n = e.n
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n), 0.0))


def _cutoff(law: ParentLaw, k: int, N: int) -> float:
    """A level with comfortably more than N of the kN eigenvalues above it.

    Only a speed hint: the caller falls back to full spectra if too few
    eigenvalues end up above.
    """
    if k == 1:
        return -math.inf
    frac = (N + 6 * math.sqrt(N) + 16) / (k * N)
    if frac >= 1:
        return -math.inf
    # margin for finite-N smearing of the spectral edge
    return float(law.isf(frac)) - 4.0 / N


def _max_spectra_chunk(spec: EnsembleSpec, k: int, seed: int, draw_ids) -> list:
    N = spec.N
    per_draw = [_tridiagonals(spec, seed, dr, k) for dr in draw_ids]
    d = np.vstack([p[0] for p in per_draw])
    e = np.vstack([p[1] for p in per_draw])
    group = np.repeat(np.arange(len(draw_ids)), k)
    cut = _cutoff(spec.law, k, N)
    if not math.isfinite(cut):
        full = eigvalsh_tridiagonal(d, e)
        return [matrix_max(list(full[g * k:(g + 1) * k])) for g in range(len(draw_ids))]
    vals, mat = eigvals_above(d, e, cut)
    counts = np.bincount(group[mat], minlength=len(draw_ids))
    out = []
    for g in range(len(draw_ids)):
        if counts[g] >= N:
            out.append(np.sort(vals[group[mat] == g])[-N:])
        else:
            rows = slice(g * k, (g + 1) * k)
            full = eigvalsh_tridiagonal(d[rows], e[rows])
            out.append(matrix_max(list(full)))
    return out


def max_spectra(spec: EnsembleSpec, k: int, draws: int, seed: int,
                budget: int = DEFAULT_BUDGET, workers: int = 1) -> np.ndarray:
    """Spectra of ``draws`` independent k-fold spectral maxima, ``(draws, N)``.

    Draw ``d`` combines matrices ``(d, 0..k-1)``. Identical to running
    :func:`matrix_max` on full spectra; only eigenvalues above a safe
    cutoff are actually computed.
    """
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise DomainError(f"k must be a positive integer, got {k}")
    if draws < 1:
        raise DomainError("draws must be >= 1")
    work = spec.N * k * draws
    if work > budget:
        raise ResourceGuardError(f"N*k*draws = {work} exceeds budget {budget}")
    per_chunk = max(1, _CHUNK_ENTRIES // (spec.N * k))
    chunks = [list(range(s, min(s + per_chunk, draws))) for s in range(0, draws, per_chunk)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda c: _max_spectra_chunk(spec, k, seed, c), chunks))
    else:
        parts = [_max_spectra_chunk(spec, k, seed, c) for c in chunks]
    return np.vstack([s for part in parts for s in part])


@dataclass
class MaxSimReport:
    spec: EnsembleSpec
    k: int
    draws: int
    seed: int
    ks_distance: float
    x_star: float
    upper_edge: float
    mass_above_edge: float
    min_eigenvalue: float
    hist_edges: np.ndarray = field(repr=False)
    hist_density: np.ndarray = field(repr=False)
    analytic_density: np.ndarray = field(repr=False)
    empirical: EmpiricalCDF = field(repr=False)

    @property
    def edge_deviation(self) -> bool:
        """Empirical mass beyond the analytic upper edge (finite-N tail)."""
        return self.mass_above_edge > 0


def empirical_vs_analytic(spec: EnsembleSpec, k: int, draws: int, seed: int,
                          bins: int = 60, budget: int = DEFAULT_BUDGET,
                          workers: int = 1) -> MaxSimReport:
    """Simulate k-fold spectral maxima and compare with ``max(0, kF - (k-1))``."""
    law = spec.law
    spectra = max_spectra(spec, k, draws, seed, budget=budget, workers=workers)
    emp = EmpiricalCDF.from_sample(spectra)
    ks = ks_distance(emp, lambda x: free_max_power(law, k, x))
    lo_law, hi_law = law.support
    x_star = lo_law if k == 1 else float(law.isf(1.0 / k))
    span = hi_law - x_star
    lo = min(x_star - 0.1 * span, float(emp.sorted_values[0]))
    hi = max(hi_law + 0.05 * span, float(emp.sorted_values[-1]))
    edges = np.linspace(lo, hi, bins + 1)
    density, _ = np.histogram(emp.sorted_values, bins=edges, density=True)
    centres = 0.5 * (edges[:-1] + edges[1:])
    return MaxSimReport(
        spec=spec,
        k=int(k),
        draws=int(draws),
        seed=int(seed),
        ks_distance=ks,
        x_star=x_star,
        upper_edge=hi_law,
        mass_above_edge=float(np.mean(emp.sorted_values > hi_law)),
        min_eigenvalue=float(emp.sorted_values[0]),
        hist_edges=edges,
        hist_density=density,
        analytic_density=np.asarray(max_density(law, k, centres)),
        empirical=emp,
    )
