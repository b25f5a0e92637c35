"""Limiting extreme laws, classical and free, and the links between them.

The classical maximum of ``m`` draws and the free (thinned, or POT) top
fraction ``1/k`` converge, after affine rescaling ``x -> a_k + b_k x`` with
the *same* constants, to one of three families each:

=========  ===========================  =====================================
family     classical                    free / POT
=========  ===========================  =====================================
Gumbel     exp(-e^-x)                   (1 - e^-x) for x > 0
Frechet    exp(-x^-gamma), x > 0        (1 - x^-gamma) for x > 1
Weibull    exp(-(-x)^gamma), x < 0      1 - (-x)^gamma on (-1, 0), 1 for x > 0
=========  ===========================  =====================================

The free laws are generalized Pareto distributions, and the two columns are
related by exponentiation, ``F_classical = t(x) exp(F_free_core(x) - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import FRECHET, GUMBEL, WEIBULL, Gaussian, ParentLaw
from .errors import DomainError, ParameterError, UnsupportedLawError
from .order_stats import AsymptoticThinned

__all__ = [
    "CLASSICAL", "FREE", "EXACT", "ASYMPTOTIC", "FAMILIES",
    "LimitLaw", "ScalingConstants", "GPDParams",
    "classical_limit_cdf", "free_limit_cdf", "gpd_cdf", "gpd_identify",
    "scaling_constants", "rescaled_thinned_cdf", "limit_convergence_report",
    "step_t", "step_T", "free_core", "exponentiation_bridge",
    "default_grid",
]

CLASSICAL = "classical"
FREE = "free"
EXACT = "exact"
ASYMPTOTIC = "asymptotic"
FAMILIES = (GUMBEL, FRECHET, WEIBULL)


def _check(family: str, gamma: float | None) -> None:
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}")
    if family != GUMBEL and not (gamma is not None and gamma > 0):
        raise ParameterError(f"{family} needs a tail index gamma > 0, got {gamma}")


@dataclass(frozen=True)
class LimitLaw:
    family: str
    calculus: str = FREE
    gamma: float | None = None

    def __post_init__(self):
        _check(self.family, self.gamma)
        if self.calculus not in (CLASSICAL, FREE):
            raise ParameterError(f"unknown calculus {self.calculus!r}")

    @classmethod
    def of(cls, law: ParentLaw, calculus: str = FREE) -> LimitLaw:
        """The limit family a parent law is attracted to."""
        return cls(law.domain, calculus, law.gamma)

    def cdf(self, x):
        if self.calculus == CLASSICAL:
            return classical_limit_cdf(self, x)
        return free_limit_cdf(self, x)


def classical_limit_cdf(ll: LimitLaw, x):
    """Fisher-Tippett-Gnedenko limits of the rescaled maximum."""
    x = np.asarray(x, dtype=float)
    g = ll.gamma
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if ll.family == GUMBEL:
            out = np.exp(-np.exp(-x))
        elif ll.family == FRECHET:
            out = np.where(x > 0, np.exp(-np.abs(x) ** -g), 0.0)
        else:
            out = np.where(x < 0, np.exp(-np.abs(x) ** g), 1.0)
    return out[()]


def free_limit_cdf(ll: LimitLaw, x):
    """Free (equivalently POT) limit laws, written with explicit steps."""
    x = np.asarray(x, dtype=float)
    g = ll.gamma
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if ll.family == GUMBEL:
            out = np.where(x > 0, -np.expm1(-x), 0.0)
        elif ll.family == FRECHET:
            out = np.where(x > 1, 1.0 - np.abs(x) ** -g, 0.0)
        else:
            out = np.where(x < -1, 0.0, np.where(x < 0, 1.0 - np.abs(x) ** g, 1.0))
    return out[()]


@dataclass(frozen=True)
class GPDParams:
    """Generalized Pareto ``G_beta`` composed with ``x -> scale (x - shift)``."""

    beta: float
    shift: float = 0.0
    scale: float = 1.0

    def affine(self, x):
        return self.scale * (np.asarray(x, dtype=float) - self.shift)

    def cdf(self, x):
        return gpd_cdf(self, self.affine(x))


def gpd_cdf(p: GPDParams | float, x):
    """Standard generalized Pareto CDF ``1 - (1 + beta x)^(-1/beta)``.

    ``beta = 0`` is the exponential limit ``1 - e^-x``; for ``beta < 0`` the
    support ends at ``-1/beta``. Any affine pre-map of ``p`` is *not*
    applied here (use :meth:`GPDParams.cdf` for that).
    """
    beta = p.beta if isinstance(p, GPDParams) else float(p)
    x = np.asarray(x, dtype=float)
    xp = np.maximum(x, 0.0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if beta == 0:
            core = -np.expm1(-xp)
        else:
            core = -np.expm1(-np.log1p(beta * xp) / beta)
        if beta < 0:
            core = np.where(xp >= -1.0 / beta, 1.0, core)
    return np.where(x > 0, core, 0.0)[()]


def gpd_identify(family: str, gamma: float | None = None) -> GPDParams:
    """Generalized Pareto form of a free limit law.

    Gumbel is ``G_0``; Frechet is ``G_{1/gamma}(gamma (x - 1))``; Weibull is
    ``G_{-1/gamma}(gamma (x + 1))``.
    """
    _check(family, gamma)
    if family == GUMBEL:
        return GPDParams(0.0, 0.0, 1.0)
    if family == FRECHET:
        return GPDParams(1.0 / gamma, 1.0, float(gamma))
    return GPDParams(-1.0 / gamma, -1.0, float(gamma))


@dataclass(frozen=True)
class ScalingConstants:
    a: float
    b: float
    mode: str = EXACT


def _gaussian_series(k: float) -> tuple[float, float]:
    # k = sqrt(2 pi) e^(u/2)
    u = 2.0 * math.log(k / math.sqrt(2 * math.pi))
    if u <= 1.0:
        raise DomainError(f"Gaussian series needs k > sqrt(2 pi e), got {k}")
    a = math.sqrt(u - math.log(u))
    return a, math.sqrt(2 + u - math.log(2 + u)) - a


def scaling_constants(law: ParentLaw, k: float, mode: str = EXACT) -> ScalingConstants:
    """Centering ``a_k`` and scaling ``b_k`` for the law's domain.

    ``EXACT`` follows the quantile recipes (Gumbel: ``a = F^-1(1 - 1/k)``,
    ``b = F^-1(1 - 1/(e k)) - a``; Frechet: ``a = 0``, ``b = F^-1(1 - 1/k)``;
    Weibull: ``a = x_+``, ``b = x_+ - F^-1(1 - 1/k)``). ``ASYMPTOTIC`` uses
    the leading-order large-``k`` expansions where the law has one.
    """
    if not k > 1:
        raise DomainError(f"k must be > 1, got {k}")
    k = float(k)
    if mode == EXACT:
        tail_q = law.isf(1.0 / k)
        if law.domain == GUMBEL:
            a = float(tail_q)
            b = float(law.isf(1.0 / (math.e * k))) - a
        elif law.domain == FRECHET:
            a, b = 0.0, float(tail_q)
        else:
            a = law.upper_edge
            b = a - float(tail_q)
    elif mode == ASYMPTOTIC:
        if isinstance(law, Gaussian):
            a, b = _gaussian_series(k)
        elif law.domain == GUMBEL:
            a = law.quantile_asymptotic(k)
            b = law.quantile_asymptotic(math.e * k) - a
        elif law.domain == FRECHET:
            a, b = 0.0, law.quantile_asymptotic(k)
        else:
            a = law.upper_edge
            b = a - law.quantile_asymptotic(k)
    else:
        raise ParameterError(f"unknown mode {mode!r}")
    if not b > 0:
        raise DomainError(f"non-positive scaling b_k={b} for {law.name} at k={k}")
    return ScalingConstants(a, b, mode)


def rescaled_thinned_cdf(law: ParentLaw, k: float, x, mode: str = EXACT):
    """Asymptotic thinned CDF at ``a_k + b_k x``."""
    c = scaling_constants(law, k, mode)
    return AsymptoticThinned(law, k).cdf(c.a + c.b * np.asarray(x, dtype=float))


def default_grid(family: str, points: int = 2001) -> np.ndarray:
    """A grid covering the non-trivial part of each free limit."""
    lo, hi = {GUMBEL: (-1.0, 12.0), FRECHET: (0.5, 50.0), WEIBULL: (-1.5, 0.5)}[family]
    return np.linspace(lo, hi, points)


def limit_convergence_report(law: ParentLaw, k_list, grid=None, mode: str = EXACT):
    """Sup-distance between rescaled thinned CDFs and the law's free limit.

    Returns ``(k, sup_distance)`` pairs in the order of ``k_list``.
    """
    if law.domain not in FAMILIES or (law.domain != GUMBEL and law.gamma is None):
        raise UnsupportedLawError(f"{law.name} has no assigned free limit")
    target = LimitLaw.of(law, FREE)
    grid = default_grid(law.domain) if grid is None else np.asarray(grid, dtype=float)
    limit = target.cdf(grid)
    return [
        (float(k), float(np.max(np.abs(rescaled_thinned_cdf(law, k, grid, mode) - limit))))
        for k in k_list
    ]


# exponentiation bridge

def step_t(family: str, x):
    """Outer step ``t``: ``theta(x)`` for Frechet, 1 otherwise."""
    x = np.asarray(x, dtype=float)
    if family == FRECHET:
        return np.where(x >= 0, 1.0, 0.0)[()]
    return np.ones_like(x)[()]


def step_T(family: str, x):
    """Inner step ``T = theta(x + s)`` with ``s`` = -1, 0, +1 for
    Frechet, Gumbel, Weibull."""
    shift = {FRECHET: -1.0, GUMBEL: 0.0, WEIBULL: 1.0}[family]
    x = np.asarray(x, dtype=float)
    return np.where(x + shift >= 0, 1.0, 0.0)[()]


def free_core(family: str, gamma: float | None, x):
    """Continuous branch of the free CDF with its ``T`` step divided out.

    Gumbel ``1 - e^-x``, Frechet ``1 - x^-gamma``, Weibull
    ``1 - theta(-x) (-x)^gamma``, defined on the whole classical support.
    """
    _check(family, gamma)
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if family == GUMBEL:
            out = -np.expm1(-x)
        elif family == FRECHET:
            out = 1.0 - np.abs(x) ** -gamma
        else:
            out = 1.0 - np.where(x < 0, np.abs(x) ** gamma, 0.0)
    return out[()]


def exponentiation_bridge(family: str, gamma: float | None, x):
    """Classical limit CDF rebuilt from the free one, ``t exp(core - 1)``."""
    x = np.asarray(x, dtype=float)
    t = step_t(family, x)
    with np.errstate(over="ignore", invalid="ignore"):
        val = np.exp(free_core(family, gamma, x) - 1.0)
    return np.where(t > 0, t * val, 0.0)[()]

