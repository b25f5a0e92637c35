import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import integrate_pdf, total_mass
from thinning import distributions as dist
from thinning.distributions import (
    Arcsine, Exponential, FreeCauchy, Gaussian, LevySmirnov, MarchenkoPastur,
    Semicircle, get_law, standard_laws,
)
from thinning.errors import DomainError, ParameterError

LAWS = standard_laws()
IDS = [law.name for law in LAWS]


def interior_points(law, count=41):
    return law.quantile(np.linspace(1e-4, 1 - 1e-4, count))


def ulp_slack(law, x):
    """Probability mass in one float spacing around x: no inversion can beat it."""
    x = np.asarray(x, dtype=float)
    return 2 * law.pdf(x) * np.spacing(np.abs(x))


# spot values

def test_semicircle_spot_values():
    law = Semicircle()
    assert dist.pdf(law, 0.0) == pytest.approx(1 / math.pi, rel=1e-15)
    assert dist.pdf(law, 3.0) == 0.0
    assert dist.cdf(law, 0.0) == pytest.approx(0.5, abs=1e-16)
    assert dist.quantile(law, 0.5) == pytest.approx(0.0, abs=1e-12)


def test_marchenko_pastur_edges():
    law = MarchenkoPastur(0.25)
    assert law.x_plus == pytest.approx(2.25)
    assert law.x_minus == pytest.approx(0.25)
    assert dist.pdf(law, 2.25) == 0.0
    assert law.cdf(law.x_minus) == 0.0 and law.cdf(law.x_plus) == 1.0


def test_cauchy_and_levy_spot_values():
    assert dist.cdf(FreeCauchy(), 0.0) == 0.5
    assert dist.quantile(FreeCauchy(), 0.5) == 0.0
    assert dist.cdf(LevySmirnov(), 0.25) == 0.0


def test_exponential_quantile_is_log_k():
    assert dist.quantile(Exponential(), 1 - 1 / 10) == pytest.approx(math.log(10), rel=1e-14)


def test_asymptotic_quantile_spot_values():
    assert dist.quantile_asymptotic(Semicircle(), 100) == pytest.approx(
        2 - (3 * math.pi / 200) ** (2 / 3), rel=1e-15)
    assert dist.quantile_asymptotic(LevySmirnov(), math.pi / 2) == pytest.approx(1.0, rel=1e-15)
    assert dist.quantile_asymptotic(Exponential(), 10) == pytest.approx(math.log(10))


# closed-form oracles written independently of the library's formulas

def test_semicircle_cdf_matches_arcsin_form():
    x = np.linspace(-2, 2, 1001)
    ref = 0.5 + x * np.sqrt(4 - x * x) / (4 * np.pi) + np.arcsin(x / 2) / np.pi
    assert np.max(np.abs(Semicircle().cdf(x) - ref)) < 1e-14


def test_arcsine_quantile_closed_form():
    p = np.linspace(0.001, 0.999, 199)
    assert np.max(np.abs(Arcsine().quantile(p) - np.sin(np.pi * p / 2) ** 2)) < 1e-12


def test_gaussian_matches_math_erf():
    x = np.linspace(-8, 8, 161)
    ref = np.array([0.5 * math.erfc(-v / math.sqrt(2)) for v in x])
    assert np.max(np.abs(Gaussian().cdf(x) - ref) / np.maximum(ref, 1e-300)) < 1e-14


def test_marchenko_pastur_cdf_matches_quadrature():
    law = MarchenkoPastur(0.25)
    for x in np.linspace(law.x_minus, law.x_plus, 13)[1:-1]:
        assert law.cdf(x) == pytest.approx(integrate_pdf(law, law.x_minus, x), abs=1e-11)


# invariants

@pytest.mark.parametrize("law", LAWS, ids=IDS)
def test_normalization(law):
    assert abs(total_mass(law) - 1.0) < 1e-9


@pytest.mark.parametrize("law", LAWS, ids=IDS)
def test_cdf_is_antiderivative_of_pdf(law):
    rng = np.random.default_rng(7)
    lo, hi = law.quantile(1e-3), law.quantile(1 - 1e-3)
    for _ in range(25):
        a, b = np.sort(rng.uniform(lo, hi, 2))
        assert abs(law.cdf(b) - law.cdf(a) - integrate_pdf(law, a, b)) <= 1e-9


@pytest.mark.parametrize("law", LAWS, ids=IDS)
def test_quantile_round_trip(law):
    x = interior_points(law)
    back = law.quantile(law.cdf(x))
    assert np.max(np.abs(back - x) / np.maximum(1.0, np.abs(x))) <= 1e-9


@pytest.mark.parametrize("law", LAWS, ids=IDS)
def test_quantile_reaches_tolerance_in_tails(law):
    p = np.array([1e-9, 1e-6, 1e-3, 0.3, 0.7, 1 - 1e-3, 1 - 1e-6])
    x = law.quantile(p)
    assert np.all(np.abs(law.cdf(x) - p) <= 1e-12 + ulp_slack(law, x))
    q = np.array([1e-12, 1e-8, 1e-4])
    x = law.isf(q)
    assert np.all(np.abs(law.sf(x) - q) <= 1e-9 * q + ulp_slack(law, x))


@pytest.mark.parametrize("law", LAWS, ids=IDS)
def test_cdf_shape(law):
    lo, hi = law.support
    x = np.linspace(law.quantile(1e-6), law.quantile(1 - 1e-6), 20001)
    F = law.cdf(x)
    assert np.all(np.diff(F) >= 0)
    assert np.all(law.pdf(x) >= 0)
    assert np.all((F >= 0) & (F <= 1))
    assert law.cdf(lo - 1 if math.isfinite(lo) else -math.inf) == 0.0
    assert law.cdf(hi + 1 if math.isfinite(hi) else math.inf) == 1.0
    if math.isfinite(hi):
        assert law.pdf(hi + 0.5) == 0.0 and law.cdf(hi) == 1.0
    if math.isfinite(lo):
        assert law.pdf(lo - 0.5) == 0.0 and law.cdf(lo) == 0.0


@pytest.mark.parametrize("law", LAWS, ids=IDS)
def test_cdf_plus_sf_is_one(law):
    x = interior_points(law, 101)
    assert np.max(np.abs(law.cdf(x) + law.sf(x) - 1)) < 4e-15


def test_marchenko_pastur_monotone_on_dense_grid():
    for r in (0.05, 0.25, 0.5, 0.9):
        law = MarchenkoPastur(r)
        x = np.linspace(law.x_minus, law.x_plus, 200001)
        assert np.all(np.diff(law.cdf(x)) >= 0)


@pytest.mark.parametrize("law", LAWS, ids=IDS)
def test_asymptotic_quantile_error_decreases(law):
    ks = [10, 100, 1000, 10000]
    errs = [abs(law.quantile_asymptotic(k) - law.isf(1 / k)) / abs(law.isf(1 / k)) for k in ks]
    if law.name == "exponential":
        assert max(errs) < 1e-15
    else:
        assert all(a > b for a, b in zip(errs, errs[1:])), errs


@settings(max_examples=60, deadline=None)
@given(p=st.floats(1e-10, 1 - 1e-10), idx=st.integers(0, len(LAWS) - 1))
def test_quantile_inverts_cdf_property(p, idx):
    law = LAWS[idx]
    x = law.quantile(p)
    assert abs(float(law.cdf(x)) - p) <= 1e-12 + ulp_slack(law, x)


def test_errors():
    with pytest.raises(ParameterError):
        MarchenkoPastur(1.5)
    with pytest.raises(ParameterError):
        get_law("uniform")
    with pytest.raises(DomainError):
        Semicircle().quantile(1.5)
    with pytest.raises(DomainError):
        Semicircle().quantile_asymptotic(1.0)


def test_registry_round_trip():
    assert [type(get_law(n)) for n in dist.LAW_NAMES] == [type(l) for l in LAWS]
    assert get_law("marchenko_pastur", r=0.5).r == 0.5
