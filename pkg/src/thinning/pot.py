"""Peaks-Over-Threshold: exceedance and excess laws above a threshold.

Conditioning on ``X > u`` keeps the fraction ``1 - F(u)`` of the mass, so
a threshold ``u`` is the same object as a thinning fraction
``k(u) = 1 / (1 - F(u))``, and the excess CDF at ``t`` equals the
asymptotic thinned CDF at ``u + t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import ParentLaw
from .errors import DegenerateThresholdError, DomainError
from .order_stats import AsymptoticThinned

__all__ = [
    "Threshold",
    "exceedance_cdf",
    "excess_cdf",
    "excess_pdf",
    "k_from_threshold",
    "threshold_from_k",
    "pot_thinning_identity_check",
]


def _tail_mass(law: ParentLaw, u: float) -> float:
    tail = float(law.sf(u))
    if tail <= 0.0:
        raise DegenerateThresholdError(
            f"threshold u={u} leaves no mass above it for {law.name}"
        )
    return tail


@dataclass(frozen=True)
class Threshold:
    u: float
    k_of_u: float

    @classmethod
    def at(cls, law: ParentLaw, u: float) -> Threshold:
        return cls(float(u), k_from_threshold(law, u))


def exceedance_cdf(law: ParentLaw, u: float, t):
    """``P(X < t | X > u) = (F(t) - F(u)) / (1 - F(u))`` for ``t >= u``."""
    tail = _tail_mass(law, u)
    t = np.asarray(t, dtype=float)
    if np.any(t < u):
        raise DomainError("exceedance level t must be >= u")
    return (1.0 - law.sf(t) / tail)[()]


def excess_cdf(law: ParentLaw, u: float, t):
    """``P(X < u + t | X > u)`` for excess ``t >= 0``."""
    tail = _tail_mass(law, u)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("excess t must be >= 0")
    return (1.0 - law.sf(u + t) / tail)[()]


def excess_pdf(law: ParentLaw, u: float, t):
    """Density of the excess, ``p(u + t) / (1 - F(u))``."""
    tail = _tail_mass(law, u)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("excess t must be >= 0")
    return (law.pdf(u + t) / tail)[()]


def k_from_threshold(law: ParentLaw, u: float) -> float:
    """Thinning fraction captured by the threshold, ``1 / (1 - F(u))``."""
    return 1.0 / _tail_mass(law, u)


def threshold_from_k(law: ParentLaw, k: float) -> float:
    """Threshold capturing the top ``1/k`` of the mass, ``F^-1(1 - 1/k)``."""
    if not k > 1:
        raise DomainError(f"k must be > 1, got {k}")
    return float(law.isf(1.0 / k))


def pot_thinning_identity_check(law: ParentLaw, u: float, grid) -> float:
    """Largest gap between the excess CDF and the thinned CDF at ``k(u)``."""
    grid = np.asarray(grid, dtype=float)
    excess = excess_cdf(law, u, grid)
    thinned = AsymptoticThinned(law, k_from_threshold(law, u)).cdf(u + grid)
    return float(np.max(np.abs(excess - thinned)))
