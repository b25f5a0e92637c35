"""Order statistics of i.i.d. samples and the thinning of their top values.

Picking the ``n`` largest of ``m`` i.i.d. draws defines the finite thinned
law; with ``m, n -> inf`` at fixed ratio ``k = m / n`` it collapses onto the
parent law truncated at its ``(1 - 1/k)``-quantile and rescaled by ``k``.

All binomial sums are evaluated term by term and accumulated with
:func:`math.fsum`. The terms come from scipy's binomial pmf, which is
computed without forming ``C(m, j)`` (naive binomials overflow near
``m = 1030``) and, unlike a sum of log-gamma values, keeps full relative
precision for ``m`` up to ``10**6``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlog1py, xlogy
from scipy.stats import binom

from .distributions import ParentLaw
from .errors import DomainError, SizeError

__all__ = [
    "MAX_SAMPLE_SIZE",
    "ThinSpec",
    "AsymptoticThinned",
    "order_cdf_iid",
    "binomial_tail_sum",
    "thinned_cdf_finite",
    "thinned_pdf_finite",
    "thinned_pdf_asymptotic",
    "thinned_cdf_asymptotic",
    "ConvergenceRow",
    "finite_to_asymptotic_convergence",
]

MAX_SAMPLE_SIZE = 10**6
_TINY_F = 1e-300


@dataclass(frozen=True)
class ThinSpec:
    """Keep the ``n`` largest of ``m`` draws."""

    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, (int, np.integer)) and isinstance(self.n, (int, np.integer))):
            raise DomainError("m and n must be integers")
        if not 1 <= self.n <= self.m:
            raise DomainError(f"need 1 <= n <= m, got m={self.m}, n={self.n}")
        if self.m > MAX_SAMPLE_SIZE:
            raise SizeError(f"m={self.m} exceeds {MAX_SAMPLE_SIZE}")

    @classmethod
    def from_ratio(cls, m: int, k: float) -> ThinSpec:
        """Round ``n = m / k`` to the nearest integer; read back ``spec.k``."""
        if not k >= 1:
            raise DomainError(f"k must be >= 1, got {k}")
        return cls(int(m), max(1, int(round(m / k))))

    @property
    def k(self) -> float:
        return self.m / self.n

    @property
    def alpha(self) -> float:
        return 1.0 - self.n / self.m


def _check_F(F: float) -> float:
    F = float(F)
    if not 0.0 <= F <= 1.0:
        raise DomainError(f"probability must lie in [0, 1], got {F}")
    return F


def _pmf(trials: int, j: np.ndarray, F: float) -> np.ndarray:
    """``C(trials, j) F^j (1-F)^(trials-j)``."""
    if 0.0 < F < _TINY_F:
        # scipy's pmf overflows internally for F near the subnormal range;
        # there only j = 0 matters and the log-gamma form is exact enough
        return np.exp(gammaln(trials + 1) - gammaln(j + 1) - gammaln(trials - j + 1)
                      + xlogy(j, F) + xlog1py(trials - j, -F))
    return binom.pmf(j, trials, F)


def _fsum(terms: np.ndarray) -> float:
    return math.fsum(terms.tolist())


def _binom_range_sum(trials: int, lo: int, hi: int, F: float) -> float:
    """P(lo <= Binomial(trials, F) <= hi)."""
    lo, hi = max(lo, 0), min(hi, trials)
    if lo > hi:
        return 0.0
    j = np.arange(lo, hi + 1, dtype=float)
    return min(1.0, _fsum(_pmf(trials, j, F)))


def _as_points(x):
    x = np.asarray(x, dtype=float)
    return x, x.ravel()


def order_cdf_iid(law: ParentLaw, m: int, i: int, x):
    """CDF of the ``i``-th smallest of ``m`` i.i.d. draws from ``law``.

    ``P(x_(i) < x) = sum_{j=i}^{m} C(m, j) F^j (1 - F)^(m - j)``.
    """
    if not 1 <= m <= MAX_SAMPLE_SIZE:
        raise SizeError(f"m must lie in [1, {MAX_SAMPLE_SIZE}], got {m}")
    if not 1 <= i <= m:
        raise DomainError(f"order index must lie in [1, m], got i={i}, m={m}")
    x, flat = _as_points(x)
    out = np.array([_binom_range_sum(m, i, m, F) for F in law.cdf(flat).reshape(-1)])
    return out.reshape(x.shape)[()]


def binomial_tail_sum(m: int, n: int, F: float) -> float:
    """Exact ``S = sum_{i=1}^{m-n} C(m-1, i-1) F^(i-1) (1-F)^(m-i)``.

    This is the lower tail ``P(Binomial(m-1, F) <= m-n-1)``; for large ``m``
    at fixed ``k = m/n`` it tends to 1 below ``F = 1 - 1/k`` and to 0 above.
    """
    if m > MAX_SAMPLE_SIZE:
        raise SizeError(f"m={m} exceeds {MAX_SAMPLE_SIZE}")
    if not 1 <= n <= m:
        raise DomainError(f"need 1 <= n <= m, got m={m}, n={n}")
    return _binom_range_sum(m - 1, 0, m - n - 1, _check_F(F))


def _thinned_cdf_from_F(spec: ThinSpec, F: float) -> float:
    # (1/n) sum_{i=m-n+1}^{m} P(B >= i) = E[(B - (m - n))^+] / n, B ~ Bin(m, F)
    m, n = spec.m, spec.n
    j = np.arange(m - n + 1, m + 1, dtype=float)
    return min(1.0, _fsum(_pmf(m, j, F) * (j - (m - n))) / n)


def thinned_cdf_finite(spec: ThinSpec, law: ParentLaw, x):
    """Average CDF of the ``n`` largest of ``m`` i.i.d. draws."""
    x, flat = _as_points(x)
    out = np.array([_thinned_cdf_from_F(spec, F) for F in law.cdf(flat).reshape(-1)])
    return out.reshape(x.shape)[()]


def thinned_pdf_finite(spec: ThinSpec, law: ParentLaw, x):
    """Density ``(m/n) p(x) [1 - S(m, n, F(x))]`` of the finite thinned law.

    The bracket ``1 - S`` is summed directly as the complementary binomial
    tail ``P(Binomial(m-1, F) >= m-n)`` so it keeps its digits when small.
    """
    m, n = spec.m, spec.n
    x, flat = _as_points(x)
    F = law.cdf(flat).reshape(-1)
    bracket = np.array([_binom_range_sum(m - 1, m - n, m - 1, f) for f in F])
    out = spec.k * law.pdf(flat).reshape(-1) * bracket
    return out.reshape(x.shape)[()]


@dataclass(frozen=True)
class AsymptoticThinned:
    """Large-sample thinned law of a parent ``law`` at fraction ``k``."""

    law: ParentLaw
    k: float

    def __post_init__(self):
        if not self.k >= 1:
            raise DomainError(f"k must be >= 1, got {self.k}")

    @property
    def alpha(self) -> float:
        return (self.k - 1) / self.k

    def _excess(self, x):
        """``F(x) - alpha``, formed as ``1/k - sf(x)`` to keep tail digits."""
        if self.k == 1:
            return self.law.cdf(x)
        return 1.0 / self.k - self.law.sf(x)

    def pdf(self, x):
        # theta(0) = 1: the threshold point itself belongs to the support
        return np.where(self._excess(x) >= 0, self.k * self.law.pdf(x), 0.0)[()]

    def cdf(self, x):
        g = self._excess(x)
        if self.k == 1:
            return g
        return np.where(g >= 0, self.k * g, 0.0)[()]


def thinned_pdf_asymptotic(t: AsymptoticThinned, x):
    """``k p(x) theta(F(x) - alpha)``."""
    return t.pdf(x)


def thinned_cdf_asymptotic(t: AsymptoticThinned, x):
    """``k (F(x) - alpha) theta(F(x) - alpha)``, i.e. ``max(0, kF - (k-1))``."""
    return t.cdf(x)


@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    n: int
    k: float
    sup_distance: float


def finite_to_asymptotic_convergence(law: ParentLaw, k: float, m_list, grid):
    """Sup-distance on ``grid`` between finite and asymptotic thinned CDFs.

    ``n`` is rounded from ``m / k`` and the asymptotic side uses the
    realized ratio ``m / n``.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("grid must be non-empty")
    rows = []
    for m in m_list:
        spec = ThinSpec.from_ratio(int(m), k)
        finite = thinned_cdf_finite(spec, law, grid)
        asym = AsymptoticThinned(law, spec.k).cdf(grid)
        rows.append(ConvergenceRow(spec.m, spec.n, spec.k, float(np.max(np.abs(finite - asym)))))
    return rows
