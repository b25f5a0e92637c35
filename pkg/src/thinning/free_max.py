"""Spectral maximum of free (asymptotically large) random matrices.

For the spectral order on Hermitian matrices, the limiting eigenvalue CDF
of ``Ha v Hb`` is ``max(0, Fa + Fb - 1)``; the ``k``-fold maximum of
i.i.d. copies gives ``max(0, kF - (k - 1))``, which is the asymptotic
thinned CDF of :mod:`thinning.order_stats` under eigenvalues <-> values.

A spectral CDF argument may be a :class:`~thinning.distributions.ParentLaw`,
an :class:`~thinning.mc_lab.EmpiricalCDF` or any vectorized callable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import ParentLaw
from .errors import DomainError
from .order_stats import AsymptoticThinned

__all__ = [
    "TruncationPoint",
    "free_max_pair",
    "free_max_power",
    "truncation_point",
    "max_density",
]


def _cdf_of(F):
    return F.cdf if hasattr(F, "cdf") else F


def free_max_pair(Fa, Fb, x):
    """Eigenvalue CDF of the spectral maximum of two free matrices."""
    fa, fb = _cdf_of(Fa)(x), _cdf_of(Fb)(x)
    return np.maximum(0.0, np.asarray(fa) + np.asarray(fb) - 1.0)[()]


def free_max_power(F, k: float, x):
    """Eigenvalue CDF of the maximum of ``k`` i.i.d. free matrices.

    ``k`` may be any real >= 1. For a parent law the complement
    ``1 - k sf(x)`` is used so large ``k`` keeps its tail digits.
    """
    if not k >= 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if isinstance(F, ParentLaw):
        if k == 1:
            return F.cdf(x)
        g = 1.0 / k - F.sf(x)
        return np.where(g >= 0, k * g, 0.0)[()]
    f = np.asarray(_cdf_of(F)(x), dtype=float)
    return np.maximum(0.0, k * f - (k - 1.0))[()]


@dataclass(frozen=True)
class TruncationPoint:
    """Lower edge ``x_star`` of the k-fold maximum, where ``F(x_star) = alpha``."""

    x_star: float
    k: float
    alpha: float


def truncation_point(law: ParentLaw, k: float) -> TruncationPoint:
    """Last k-quantile of ``law``: ``x_star = quantile(1 - 1/k)``."""
    if not k > 1:
        raise DomainError(f"truncation needs k > 1, got {k}")
    return TruncationPoint(float(law.isf(1.0 / k)), float(k), (k - 1.0) / k)


def max_density(law: ParentLaw, k: float, x):
    """Eigenvalue density of the k-fold maximum: the parent density times
    ``k``, cut off below the truncation point."""
    return AsymptoticThinned(law, k).pdf(x)
