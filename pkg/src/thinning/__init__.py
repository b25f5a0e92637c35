"""Thinning of order statistics, free extreme values and spectral maxima.

Submodules
----------
distributions   parent laws (pdf, cdf, sf, quantiles)
order_stats     finite and asymptotic thinned laws
free_max        spectral maximum of free random matrices
pot             peaks-over-threshold exceedances
extreme_laws    classical and free limit laws, scaling constants
mc_lab          random-matrix Monte Carlo for the spectral maximum
cli             CSV-emitting command-line front end
"""

from .distributions import (
    Arcsine, Exponential, FreeCauchy, Gaussian, LAW_NAMES, LevySmirnov,
    MarchenkoPastur, ParentLaw, Semicircle, get_law, standard_laws,
)
from .errors import (
    DegenerateThresholdError, DomainError, InversionError, ParameterError,
    ResourceGuardError, SizeError, ThinningError, UnsupportedLawError,
)
from .extreme_laws import (
    GPDParams, LimitLaw, ScalingConstants, exponentiation_bridge, gpd_identify,
    limit_convergence_report, scaling_constants,
)
from .free_max import free_max_pair, free_max_power, max_density, truncation_point
from .mc_lab import EmpiricalCDF, EnsembleSpec, empirical_vs_analytic, ks_distance, matrix_max
from .order_stats import (
    AsymptoticThinned, ThinSpec, binomial_tail_sum, thinned_cdf_asymptotic,
    thinned_cdf_finite,
)
from .pot import excess_cdf, exceedance_cdf, k_from_threshold, threshold_from_k

__version__ = "0.1.0"

__all__ = [
    "Arcsine", "Exponential", "FreeCauchy", "Gaussian", "LAW_NAMES", "LevySmirnov",
    "MarchenkoPastur", "ParentLaw", "Semicircle", "get_law", "standard_laws",
    "DegenerateThresholdError", "DomainError", "InversionError", "ParameterError",
    "ResourceGuardError", "SizeError", "ThinningError", "UnsupportedLawError",
    "GPDParams", "LimitLaw", "ScalingConstants", "exponentiation_bridge", "gpd_identify",
    "limit_convergence_report", "scaling_constants",
    "free_max_pair", "free_max_power", "max_density", "truncation_point",
    "EmpiricalCDF", "EnsembleSpec", "empirical_vs_analytic", "ks_distance", "matrix_max",
    "AsymptoticThinned", "ThinSpec", "binomial_tail_sum", "thinned_cdf_asymptotic",
    "thinned_cdf_finite",
    "excess_cdf", "exceedance_cdf", "k_from_threshold", "threshold_from_k",
]
