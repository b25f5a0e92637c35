"""Parent distributions: spectral densities and classical laws.

Every law exposes a vectorized ``pdf``, ``cdf`` and ``sf`` (survival
function, ``1 - cdf`` evaluated without cancellation in the upper tail),
a ``quantile``/``isf`` pair, its support and the metadata that classifies
its extremes (domain of attraction and tail index).

The seven tabulated laws are

==================  ===================  =========  =====
law                 support              domain     gamma
==================  ===================  =========  =====
Semicircle          [-2, 2]              Weibull    3/2
MarchenkoPastur(r)  [(1-√r)², (1+√r)²]   Weibull    3/2
Arcsine             [0, 1]               Weibull    1/2
FreeCauchy          (-inf, inf)          Frechet    1
LevySmirnov         [1/4, inf)           Frechet    1/2
Gaussian            (-inf, inf)          Gumbel     --
Exponential         [0, inf)             Gumbel     --
==================  ===================  =========  =====

New laws can be added by subclassing :class:`ParentLaw` and implementing
``_pdf``, ``_cdf`` and (optionally) ``_sf``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .errors import DomainError, InversionError, ParameterError, UnsupportedLawError

__all__ = [
    "GUMBEL", "FRECHET", "WEIBULL",
    "ParentLaw", "Semicircle", "MarchenkoPastur", "Arcsine", "FreeCauchy",
    "LevySmirnov", "Gaussian", "Exponential",
    "LAW_NAMES", "get_law", "standard_laws",
    "pdf", "cdf", "sf", "quantile", "isf", "quantile_asymptotic",
]

GUMBEL = "gumbel"
FRECHET = "frechet"
WEIBULL = "weibull"

QUANTILE_TOL = 1e-12
_BRACKET_RTOL = 1e-8
_NEWTON_STEPS = 5
_EPS = np.finfo(float).eps


def _y_minus_sin(y):
    """``y - sin(y)`` without cancellation for small ``y``."""
    y = np.asarray(y, dtype=float)
    out = y - np.sin(y)
    small = y < 0.5
    if np.any(small):
        ys = y[small]
        y2 = ys * ys
        term = ys * y2 / 6.0
        acc = term.copy()
        for n in range(2, 10):
            term = -term * y2 / ((2 * n) * (2 * n + 1))
            acc += term
        out[small] = acc
    return out


class ParentLaw:
    """A parent distribution with closed-form density and distribution.

    Subclasses set ``name``, ``support``, ``domain`` and ``gamma`` and
    implement ``_pdf`` and ``_cdf`` on points strictly inside the support.
    ``_sf`` defaults to ``1 - _cdf``; laws with an upper tail override it.
    """

    name: str = "law"
    domain: str = GUMBEL
    gamma: float | None = None

    def __init__(self):
        self.support = self._support()

    def _support(self) -> tuple[float, float]:
        raise NotImplementedError

    def _pdf(self, x):
        raise NotImplementedError

    def _cdf(self, x):
        raise NotImplementedError

    def _sf(self, x):
        return 1.0 - self._cdf(x)

    def __repr__(self):
        return f"{type(self).__name__}()"

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, self.support))

    @property
    def upper_edge(self) -> float:
        """Right end of the support (``inf`` for unbounded laws)."""
        return self.support[1]

    # vectorized public evaluation

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x > lo) & (x < hi)
        out = np.zeros_like(x)
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore"):
                out[inside] = self._pdf(x[inside])
        edge = (x == lo) | (x == hi)
        if np.any(edge):
            with np.errstate(divide="ignore", invalid="ignore"):
                out[edge] = np.maximum(self._pdf(x[edge]), 0.0)
        return out[()]

    def _evaluate(self, x, fn, below, above):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        out = np.where(x <= lo, below, above).astype(float)
        inside = (x > lo) & (x < hi)
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore"):
                out[inside] = np.clip(fn(x[inside]), 0.0, 1.0)
        return out[()]

    def cdf(self, x):
        return self._evaluate(x, self._cdf, 0.0, 1.0)

    def sf(self, x):
        return self._evaluate(x, self._sf, 1.0, 0.0)

    # inversion

    def quantile(self, p):
        """Inverse CDF, ``x`` with ``cdf(x) = p`` for ``p`` in (0, 1)."""
        return self._vectorized_inverse(p, self._quantile_scalar)

    def isf(self, q):
        """Inverse survival function, ``x`` with ``sf(x) = q``.

        Accurate for tiny ``q`` where ``quantile(1 - q)`` would lose
        digits to the rounding of ``1 - q``.
        """
        return self._vectorized_inverse(q, self._isf_scalar)

    @staticmethod
    def _vectorized_inverse(p, fn):
        p = np.asarray(p, dtype=float)
        if np.any(~((p > 0) & (p < 1))):
            raise DomainError(f"probability must lie in (0, 1), got {p}")
        if p.ndim == 0:
            return np.float64(fn(float(p)))
        return np.array([fn(float(v)) for v in p.ravel()]).reshape(p.shape)

    def _quantile_scalar(self, p: float) -> float:
        if p > 0.5:
            return self._isf_scalar(1.0 - p)
        return self._solve(p, upper=False)

    def _isf_scalar(self, q: float) -> float:
        if q > 0.5:
            return self._quantile_scalar(1.0 - q)
        return self._solve(q, upper=True)

    def _bracket(self, target: float, upper: bool) -> tuple[float, float]:
        lo, hi = self.support
        fn = self.sf if upper else self.cdf
        if not math.isfinite(lo):
            lo = min(-1.0, hi - 1.0)
            while (fn(lo) < target) if upper else (fn(lo) > target):
                lo *= 2.0
        if not math.isfinite(hi):
            hi = max(1.0, lo + 1.0)
            while (fn(hi) > target) if upper else (fn(hi) < target):
                hi *= 2.0
        return lo, hi

    def _solve(self, target: float, upper: bool) -> float:
        """Bracketed bisection followed by safeguarded Newton polishing.

        Solves ``h(x) = 0`` with ``h = cdf - p`` (lower half) or
        ``h = q - sf`` (upper half); both are increasing with slope pdf.
        """
        if upper:
            def h(x):
                return target - float(self.sf(x))
        else:
            def h(x):
                return float(self.cdf(x)) - target

        lo, hi = self._bracket(target, upper)
        for _ in range(400):
            if hi - lo <= _BRACKET_RTOL * max(1.0, abs(lo), abs(hi)):
                break
            mid = 0.5 * (lo + hi)
            if h(mid) < 0:
                lo = mid
            else:
                hi = mid

        x = 0.5 * (lo + hi)
        converged = False
        for _ in range(_NEWTON_STEPS):
            hx = h(x)
            if hx == 0.0:
                return x
            if hx < 0:
                lo = x
            else:
                hi = x
            d = float(self.pdf(x))
            step = hx / d if d > 0 and math.isfinite(d) else math.nan
            xn = x - step
            if not (lo < xn < hi):
                xn = 0.5 * (lo + hi)
            elif abs(step) <= 4 * _EPS * max(abs(x), _EPS):
                x, converged = xn, True
                break
            x = xn

        # pure bisection fallback when Newton left the bracket or stalled at
        # a soft edge; runs until the bracket collapses to adjacent floats
        hx = h(x)
        best = (abs(hx), x)
        while not converged and hx != 0.0:
            if hx < 0:
                lo = x
            else:
                hi = x
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            x = mid
            hx = h(x)
            best = min(best, (abs(hx), x))
        resid, x = best if not converged else (abs(hx), x)
        if resid > QUANTILE_TOL and hi - lo > 2 * _EPS * max(abs(lo), abs(hi)):
            raise InversionError(
                f"{self.name}: inversion at {target} stalled with residual {resid:.3e}"
            )
        return x

    def quantile_asymptotic(self, k: float) -> float:
        """Leading-order approximation to ``quantile(1 - 1/k)`` for large ``k``."""
        if not k > 1:
            raise DomainError(f"asymptotic quantile needs k > 1, got {k}")
        return self._quantile_asymptotic(float(k))

    def _quantile_asymptotic(self, k: float) -> float:
        raise UnsupportedLawError(f"no asymptotic quantile expansion for {self.name}")


class Semicircle(ParentLaw):
    """Wigner semicircle on [-2, 2], the GUE spectral density."""

    name = "semicircle"
    domain = WEIBULL
    gamma = 1.5

    def _support(self):
        return (-2.0, 2.0)

    def _pdf(self, x):
        return np.sqrt((2.0 - x) * (2.0 + x)) / (2 * np.pi)

    # With x = 2cos(t) the mass above x is (2t - sin 2t) / 2pi.
    def _cdf(self, x):
        return _y_minus_sin(2 * np.arccos(-0.5 * x)) / (2 * np.pi)

    def _sf(self, x):
        return _y_minus_sin(2 * np.arccos(0.5 * x)) / (2 * np.pi)

    def _quantile_asymptotic(self, k):
        return 2.0 - (3 * np.pi / (2 * k)) ** (2.0 / 3.0)


class MarchenkoPastur(ParentLaw):
    """Marchenko-Pastur law with rectangularity ``0 < r < 1`` and unit mean."""

    name = "marchenko-pastur"
    domain = WEIBULL
    gamma = 1.5

    def __init__(self, r: float = 0.25):
        r = float(r)
        if not 0.0 < r < 1.0:
            raise ParameterError(f"rectangularity must lie in (0, 1), got {r}")
        self.r = r
        self.x_minus = (1 - math.sqrt(r)) ** 2
        self.x_plus = (1 + math.sqrt(r)) ** 2
        super().__init__()

    def __repr__(self):
        return f"MarchenkoPastur(r={self.r})"

    def _support(self):
        return (self.x_minus, self.x_plus)

    def _root(self, x):
        return np.sqrt((self.x_plus - x) * (x - self.x_minus))

    def _pdf(self, x):
        return self._root(x) / (2 * np.pi * self.r * x)

    def _cdf(self, x):
        # Both arctangent denominators are positive inside the support, so
        # the principal branch is already continuous there.
        r = self.r
        x = np.asarray(x, dtype=float)
        s = self._root(x)
        out = (
            0.5
            + s / (2 * np.pi * r)
            + (1 - r) / (2 * np.pi * r)
            * np.arctan(((1 - r) ** 2 - x * (1 + r)) / ((1 - r) * s))
            - (1 + r) / (2 * np.pi * r) * np.arctan((1 + r - x) / s)
        )
        # near the lower edge both arguments are positive; fold with
        # arctan(z) = pi/2 - arctan(1/z) so the constants cancel exactly
        head = x < (1 - r) ** 2 / (1 + r)
        if np.any(head):
            xh, sh = x[head], s[head]
            out[head] = (
                sh / (2 * np.pi * r)
                - (1 - r) / (2 * np.pi * r)
                * np.arctan((1 - r) * sh / ((1 - r) ** 2 - xh * (1 + r)))
                + (1 + r) / (2 * np.pi * r) * np.arctan(sh / (1 + r - xh))
            )
        return out

    def _sf(self, x):
        # Above x = 1 + r both arctangent arguments are negative; folding
        # arctan(z) = -pi/2 - arctan(1/z) cancels the constants exactly and
        # leaves three O(sqrt(x+ - x)) terms instead of 1 - cdf.
        r = self.r
        x = np.asarray(x, dtype=float)
        out = 1.0 - self._cdf(x)
        tail = x > 1 + r
        if np.any(tail):
            xt = x[tail]
            s = self._root(xt)
            out[tail] = (
                -s / (2 * np.pi * r)
                + (1 - r) / (2 * np.pi * r)
                * np.arctan((1 - r) * s / ((1 - r) ** 2 - xt * (1 + r)))
                - (1 + r) / (2 * np.pi * r) * np.arctan(s / (1 + r - xt))
            )
        return out

    def _quantile_asymptotic(self, k):
        r = self.r
        return self.x_plus - (3 * np.pi / (2 * k)) ** (2.0 / 3.0) * (
            1 + math.sqrt(r)
        ) ** (4.0 / 3.0) * math.sqrt(r)


class Arcsine(ParentLaw):
    """Arcsine law on [0, 1], Beta(1/2, 1/2)."""

    name = "arcsine"
    domain = WEIBULL
    gamma = 0.5

    def _support(self):
        return (0.0, 1.0)

    def _pdf(self, x):
        return 1.0 / (np.pi * np.sqrt(x * (1.0 - x)))

    # arcsin is ill-conditioned near 1, so each half uses the arccos twin
    def _cdf(self, x):
        return 2 / np.pi * np.where(
            x < 0.5, np.arcsin(np.sqrt(x)), np.arccos(np.sqrt(1.0 - x)))

    def _sf(self, x):
        return 2 / np.pi * np.where(
            x > 0.5, np.arcsin(np.sqrt(1.0 - x)), np.arccos(np.sqrt(x)))

    def _quantile_asymptotic(self, k):
        # sf(x) ~ (2/pi) sqrt(1 - x) at the upper edge
        return 1.0 - (np.pi / (2 * k)) ** 2


class FreeCauchy(ParentLaw):
    """Symmetric spectral Cauchy law, closed-form inverse ``-cot(pi p)``."""

    name = "free-cauchy"
    domain = FRECHET
    gamma = 1.0

    def _support(self):
        return (-math.inf, math.inf)

    def _pdf(self, x):
        return 1.0 / (np.pi * (1.0 + x * x))

    def _cdf(self, x):
        return np.arctan2(1.0, -x) / np.pi

    def _sf(self, x):
        return np.arctan2(1.0, x) / np.pi

    def _quantile_scalar(self, p):
        return -1.0 / math.tan(math.pi * p) if p != 0.5 else 0.0

    def _isf_scalar(self, q):
        return 1.0 / math.tan(math.pi * q) if q != 0.5 else 0.0

    def _quantile_asymptotic(self, k):
        # sf(x) ~ 1 / (pi x) for large x
        return k / np.pi


class LevySmirnov(ParentLaw):
    """Free Levy-Smirnov law on [1/4, inf)."""

    name = "levy-smirnov"
    domain = FRECHET
    gamma = 0.5

    def _support(self):
        return (0.25, math.inf)

    def _pdf(self, x):
        return np.sqrt(4 * x - 1) / (2 * np.pi * x * x)

    def _cdf(self, x):
        return 2 / np.pi * np.arccos(0.5 / np.sqrt(x)) - np.sqrt(4 * x - 1) / (
            2 * np.pi * x
        )

    def _sf(self, x):
        return 2 / np.pi * np.arcsin(0.5 / np.sqrt(x)) + np.sqrt(4 * x - 1) / (
            2 * np.pi * x
        )

    def _quantile_asymptotic(self, k):
        return (2 * k / np.pi) ** 2


class Gaussian(ParentLaw):
    """Standard normal law, the spectral density of a free Gaussian ensemble."""

    name = "gaussian"
    domain = GUMBEL
    gamma = None

    def _support(self):
        return (-math.inf, math.inf)

    def _pdf(self, x):
        return np.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)

    def _cdf(self, x):
        return 0.5 * special.erfc(-x / math.sqrt(2))

    def _sf(self, x):
        return 0.5 * special.erfc(x / math.sqrt(2))

    # sqrt(2) erfinv(2p - 1) rewritten through erfcinv to keep tail digits
    def _quantile_scalar(self, p):
        return -math.sqrt(2) * float(special.erfcinv(2 * p))

    def _isf_scalar(self, q):
        return math.sqrt(2) * float(special.erfcinv(2 * q))

    def _quantile_asymptotic(self, k):
        # erfinv(z) ~ sqrt(L - ln L) / sqrt(2) with L = ln(2 / (pi (1 - z)^2))
        # at z = 1 - 2/k, i.e. L = ln(k^2 / 2pi).
        L = math.log(k * k / (2 * math.pi))
        if L <= 1.0:
            raise DomainError(f"Gaussian expansion needs k > sqrt(2 pi e), got {k}")
        return math.sqrt(L - math.log(L))


class Exponential(ParentLaw):
    """Unit exponential law on [0, inf)."""

    name = "exponential"
    domain = GUMBEL
    gamma = None

    def _support(self):
        return (0.0, math.inf)

    def _pdf(self, x):
        return np.exp(-x)

    def _cdf(self, x):
        return -np.expm1(-x)

    def _sf(self, x):
        return np.exp(-x)

    def _quantile_scalar(self, p):
        return -math.log1p(-p)

    def _isf_scalar(self, q):
        return -math.log(q)

    def _quantile_asymptotic(self, k):
        return math.log(k)


_REGISTRY = {
    "semicircle": Semicircle,
    "marchenko-pastur": MarchenkoPastur,
    "arcsine": Arcsine,
    "free-cauchy": FreeCauchy,
    "levy-smirnov": LevySmirnov,
    "gaussian": Gaussian,
    "exponential": Exponential,
}
LAW_NAMES = tuple(_REGISTRY)


def get_law(name: str, **params) -> ParentLaw:
    """Build a law from its registry name, e.g. ``get_law("marchenko-pastur", r=0.5)``."""
    key = name.lower().replace("_", "-")
    if key not in _REGISTRY:
        raise ParameterError(f"unknown law {name!r}; choose from {', '.join(LAW_NAMES)}")
    return _REGISTRY[key](**params)


def standard_laws() -> list[ParentLaw]:
    """The seven tabulated laws, Marchenko-Pastur at ``r = 1/4``."""
    return [cls() for cls in _REGISTRY.values()]


def pdf(law: ParentLaw, x):
    return law.pdf(x)


def cdf(law: ParentLaw, x):
    return law.cdf(x)


def sf(law: ParentLaw, x):
    return law.sf(x)


def quantile(law: ParentLaw, p):
    return law.quantile(p)


def isf(law: ParentLaw, q):
    return law.isf(q)


def quantile_asymptotic(law: ParentLaw, k: float) -> float:
    return law.quantile_asymptotic(k)
