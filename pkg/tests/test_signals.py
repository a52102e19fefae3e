import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from trollfarm.errors import ConfigError, DomainError
from trollfarm.signals import (audit_signal_model, cutoff, cutoffs, gaussian_family, gaussian_index_family,
                               gennorm_family, is_more_informative, likelihood_ratio, posterior_no_trolls,
                               quantile, signal_model_from_config)

TYPES = [0.1 * k for k in range(1, 10)]


def test_likelihood_ratio_at_zero_is_one(gauss):
    assert likelihood_ratio(gauss, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_likelihood_ratio_closed_form():
    m = gaussian_family(0.5, 1.0)
    assert likelihood_ratio(m, 1.0) == pytest.approx(math.e, rel=1e-12)
    grid = np.linspace(-5, 5, 101)
    lr = np.array([likelihood_ratio(m, s) for s in grid])
    assert np.allclose(lr, np.exp(2 * 0.5 * grid), rtol=1e-9)


def test_likelihood_ratio_underflow_names_signal(gauss):
    with pytest.raises(DomainError, match="s=60"):
        likelihood_ratio(gauss, 60.0)


def test_posterior_values():
    m = gaussian_family(0.5, 1.0)
    assert posterior_no_trolls(m, 0.0) == 0.5
    assert posterior_no_trolls(m, 1.0) == pytest.approx(math.e / (math.e + 1), abs=1e-6)
    assert posterior_no_trolls(m, 60.0) == pytest.approx(1.0)


@pytest.mark.parametrize("mu,sigma", [(1.0, 1.0), (0.3, 2.0), (4.0, 0.5)])
def test_gaussian_cutoff_closed_form(mu, sigma):
    m = gaussian_family(mu, sigma)
    assert cutoff(m, 0.5) == 0.0
    for x in TYPES:
        assert cutoff(m, x) == pytest.approx(sigma**2 / (2 * mu) * math.log(x / (1 - x)), abs=1e-12)


def test_cutoff_rejects_boundary_types(gauss):
    for x in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(DomainError):
            cutoff(gauss, x)


def test_cutoff_large_types_finite(gauss):
    assert math.isfinite(cutoff(gauss, 0.999))
    assert cutoff(gauss, 0.999) > cutoff(gauss, 0.99)


def test_posterior_at_cutoff_is_type():
    for m in (gaussian_family(1.0), gennorm_family(1.0, 1.5)):
        for x in TYPES:
            assert posterior_no_trolls(m, cutoff(m, x)) == pytest.approx(x, abs=1e-6)


def test_bisection_cutoff_matches_likelihood_level():
    m = gennorm_family(0.7, 1.8, 1.3)
    for x in (0.05, 0.3, 0.5, 0.8, 0.999):
        s = cutoff(m, x)
        assert likelihood_ratio(m, s) == pytest.approx(x / (1 - x), rel=1e-8)


def test_vectorized_cutoffs_agree():
    for m in (gaussian_family(1.3, 0.8), gennorm_family(1.0, 1.5)):
        xs = np.linspace(0.01, 0.99, 37)
        assert np.allclose(cutoffs(m, xs), [cutoff(m, x) for x in xs], atol=1e-8)


def test_quantile_inverts_cdf():
    for m in (gaussian_family(1.0), gennorm_family(1.0, 1.5)):
        u = np.linspace(0.001, 0.999, 50)
        for state in (0, 1):
            assert np.allclose(m.cdf(state, quantile(m, state, u)), u, atol=1e-9)


@pytest.mark.parametrize("model", [gaussian_family(1.0), gaussian_family(0.2, 3.0), gennorm_family(1.0, 1.5)])
def test_audit_clean(model):
    assert audit_signal_model(model) == []


def test_audit_flags_fosd_violation():
    good = gaussian_family(1.0)
    swapped = type(good)(density_0=good.density_1, density_1=good.density_0, cdf_0=good.cdf_1,
                         cdf_1=good.cdf_0, support_probe=good.support_probe)
    problems = audit_signal_model(swapped)
    assert any("increasing" in p for p in problems)
    assert any("dominance" in p for p in problems)


def test_gaussian_sf_matches_scipy():
    m = gaussian_family(1.5, 0.7)
    s = np.linspace(-8, 8, 41)
    assert np.allclose(m.sf(1, s), stats.norm(1.5, 0.7).sf(s), rtol=1e-12, atol=0)


def test_informativeness_reflexive(gauss):
    assert is_more_informative(gauss, gauss, TYPES).holds


def test_informativeness_records_violations():
    rep = is_more_informative(gaussian_family(0.05), gaussian_family(0.01), [0.3, 0.5, 0.95])
    assert isinstance(rep.violations, tuple)
    assert bool(rep) == (len(rep.violations) == 0)
    rep = is_more_informative(gaussian_family(2.0), gaussian_family(1.0), [0.3 + 0.1 * k for k in range(7)])
    assert all(0 < x < 1 for x in rep.violations)


def test_informativeness_grid_validation(gauss):
    with pytest.raises(DomainError):
        is_more_informative(gauss, gauss, [])
    with pytest.raises(DomainError):
        is_more_informative(gauss, gauss, [0.0, 0.5])


def test_informativeness_transitive_where_pairwise_true():
    grid = [0.5 + 0.02 * k for k in range(1, 25)] + [0.5 - 0.02 * k for k in range(1, 25)]
    models = [gaussian_family(mu) for mu in (1.0, 2.0, 4.0)]
    ab = is_more_informative(models[1], models[0], grid).holds
    bc = is_more_informative(models[2], models[1], grid).holds
    if ab and bc:
        assert is_more_informative(models[2], models[0], grid).holds


def test_index_family_maps_exp():
    assert gaussian_index_family(math.log(2.5)).params["mu"] == pytest.approx(2.5)


def test_config_roundtrip_and_errors():
    m = signal_model_from_config({"family": "gaussian", "mu": 2, "sigma": 0.5})
    assert m.params == {"mu": 2.0, "sigma": 0.5}
    with pytest.raises(ConfigError, match="signal.mu"):
        signal_model_from_config({"family": "gaussian"})
    with pytest.raises(ConfigError, match="signal.family"):
        signal_model_from_config({"family": "cauchy", "mu": 1})
    with pytest.raises(ConfigError, match="signal.nu"):
        signal_model_from_config({"family": "gaussian", "mu": 1, "nu": 3})
    with pytest.raises(ConfigError, match="signal"):
        signal_model_from_config({"family": "gaussian", "mu": -1})


def test_gennorm_requires_shape_above_one():
    with pytest.raises(DomainError):
        gennorm_family(1.0, 1.0)


@settings(max_examples=60, deadline=None)
@given(mu=st.floats(0.05, 5.0), sigma=st.floats(0.2, 5.0), a=st.floats(-6, 6), b=st.floats(-6, 6))
def test_mlrp_and_fosd_property(mu, sigma, a, b):
    m = gaussian_family(mu, sigma)
    lo, hi = sorted((a, b))
    if hi - lo < 1e-6:
        return
    assert m.log_lr(hi) > m.log_lr(lo)
    assert m.cdf_0(lo) >= m.cdf_1(lo)


@settings(max_examples=60, deadline=None)
@given(mu=st.floats(0.05, 5.0), x=st.floats(0.001, 0.999), y=st.floats(0.001, 0.999))
def test_cutoff_increasing_property(mu, x, y):
    m = gaussian_family(mu)
    if abs(x - y) < 1e-9:
        return
    lo, hi = sorted((x, y))
    assert cutoff(m, hi) > cutoff(m, lo)
