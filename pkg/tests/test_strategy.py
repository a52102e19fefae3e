import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, stats

from trollfarm.errors import DomainError, PreconditionError, SingularityError
from trollfarm.signals import cutoff, gaussian_family, gennorm_family, posterior_no_trolls
from trollfarm.strategy import (constant_cap, constrained_strategy, kappa, no_trolls, optimal_mass,
                                optimal_strategy, posterior_with_trolls, relative_cap, s_hat, table_cap)

LOW = [0.1, 0.2, 0.3, 0.4]
HIGH = [0.6, 0.7, 0.8, 0.9]


def test_kappa_limits_and_value(gauss):
    assert kappa(gauss, 0.3, -60.0) == pytest.approx(0.0, abs=1e-15)
    for x in (0.2, 0.7, 0.95):
        assert kappa(gauss, x, 60.0) == pytest.approx(-1.0, abs=1e-12)
    phi = stats.norm.cdf
    assert kappa(gauss, 0.3, 0.0) == pytest.approx((0.3 * phi(1) - 0.7 * phi(-1)) / 0.4, abs=1e-14)


def test_kappa_singular_at_half(gauss):
    with pytest.raises(SingularityError):
        kappa(gauss, 0.5 + 1e-10, 0.0)
    with pytest.raises(DomainError):
        kappa(gauss, 1.2, 0.0)


def test_optimal_mass_limits(gauss):
    assert optimal_mass(gauss, 0.5) == 1.0
    assert optimal_mass(gauss, 1e-6) < 1e-6
    assert optimal_mass(gauss, 1 - 1e-6) < 1e-6
    for k in range(2, 6):
        eps = 10.0**-k
        assert optimal_mass(gauss, 0.5 - eps) > 1 - 10 * eps
        assert optimal_mass(gauss, 0.5 + eps) > 1 - 10 * eps
    with pytest.raises(DomainError):
        optimal_mass(gauss, 0.0)


def test_optimal_mass_monotone_each_side(gauss):
    xs = np.round(np.arange(0.02, 0.99, 0.02), 10)
    a = np.array([optimal_mass(gauss, x) for x in xs if x != 0.5])
    lo = a[: len(a) // 2]
    hi = a[len(a) // 2:]
    assert np.all(np.diff(lo) > 0) and np.all(np.diff(hi) < 0)


def test_density_zero_at_cutoff_and_positive_below(gauss):
    st_ = optimal_strategy(gauss, 0.3)
    s = cutoff(gauss, 0.3)
    assert st_.density(s) == pytest.approx(0.0, abs=1e-14)
    assert st_.density(s - 1e-3) > 0
    assert st_.density(s + 1e-3) == 0.0
    assert st_.acceptance_threshold == -math.inf


def test_upper_cdf_endpoints(gauss):
    st_ = optimal_strategy(gauss, 0.7)
    s = cutoff(gauss, 0.7)
    assert st_.cdf(s) == pytest.approx(0.0, abs=1e-14)
    assert st_.cdf(np.inf) == pytest.approx(1.0, abs=1e-14)
    assert st_.density(s - 1e-6) == 0.0
    assert st_.acceptance_threshold == s


@pytest.mark.parametrize("x", LOW + HIGH)
def test_density_integrates_to_one(gauss, x):
    st_ = optimal_strategy(gauss, x)
    lo, hi = st_.support
    val, _ = integrate.quad(st_.density, lo, hi, epsabs=1e-10, limit=200)
    assert val == pytest.approx(1.0, abs=1e-6)
    assert float(st_.cdf(hi)) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("x", LOW + HIGH)
def test_posterior_pinned_on_support(gauss, x):
    st_ = optimal_strategy(gauss, x)
    s_star = cutoff(gauss, x)
    probe = np.linspace(s_star - 6, s_star, 200) if x < 0.5 else np.linspace(s_star, s_star + 6, 200)
    assert np.max(np.abs(posterior_with_trolls(gauss, st_, probe) - x)) < 1e-6


@pytest.mark.parametrize("x", LOW)
def test_low_types_always_persuaded(gauss, x):
    st_ = optimal_strategy(gauss, x)
    grid = np.linspace(-12, 12, 2001)
    assert np.all(posterior_with_trolls(gauss, st_, grid) >= x - 1e-9)


@pytest.mark.parametrize("x", HIGH)
def test_high_types_never_flipped_below_cutoff(gauss, x):
    st_ = optimal_strategy(gauss, x)
    grid = np.linspace(cutoff(gauss, x) - 8, cutoff(gauss, x) - 1e-6, 500)
    assert np.all(posterior_with_trolls(gauss, st_, grid) < x)


def test_posterior_without_trolls_matches(gauss):
    nt = no_trolls(0.3)
    for s in (-2.0, 0.0, 1.7):
        assert posterior_with_trolls(gauss, nt, s) == posterior_no_trolls(gauss, s)


def test_no_trolls_outside_unit_interval(gauss):
    assert optimal_strategy(gauss, -0.2).alpha == 0.0
    assert optimal_strategy(gauss, 1.3).alpha == 0.0
    assert optimal_strategy(gauss, 1.3).acceptance_threshold == math.inf
    with pytest.raises(SingularityError):
        optimal_strategy(gauss, 0.5)


def test_symmetry_of_masses(gauss):
    for x in (0.1, 0.25, 0.45):
        assert optimal_mass(gauss, x) == pytest.approx(optimal_mass(gauss, 1 - x), rel=1e-12)


def test_gennorm_strategy_pinned():
    m = gennorm_family(1.0, 1.5)
    for x in (0.3, 0.8):
        st_ = optimal_strategy(m, x)
        s = cutoff(m, x)
        probe = np.linspace(s - 4, s, 50) if x < 0.5 else np.linspace(s, s + 4, 50)
        assert np.max(np.abs(posterior_with_trolls(m, st_, probe) - x)) < 1e-6


@pytest.mark.parametrize("x", [0.2, 0.4])
@pytest.mark.parametrize("k", [0.25, 0.5, 0.75])
def test_s_hat_residual(gauss, x, k):
    cap = k * optimal_mass(gauss, x)
    sh = s_hat(gauss, x, cap)
    resid = kappa(gauss, x, cutoff(gauss, x)) - kappa(gauss, x, sh) - cap / (1 - cap)
    assert abs(resid) <= 1e-9
    assert sh < cutoff(gauss, x)


def test_s_hat_limits(gauss):
    x = 0.3
    a = optimal_mass(gauss, x)
    assert s_hat(gauss, x, 1e-9) == pytest.approx(cutoff(gauss, x), abs=1e-4)
    assert s_hat(gauss, x, a * (1 - 1e-6)) < cutoff(gauss, x) - 3
    with pytest.raises(PreconditionError):
        s_hat(gauss, x, a)
    with pytest.raises(DomainError):
        s_hat(gauss, x, 0.0)
    with pytest.raises(DomainError):
        s_hat(gauss, 0.7, 0.1)


def test_constrained_slack_equals_optimal(gauss):
    for x in (0.3, 0.7):
        c = constrained_strategy(gauss, x, 1.0)
        o = optimal_strategy(gauss, x)
        grid = np.linspace(-4, 4, 81)
        assert c.alpha == o.alpha
        assert np.allclose(c.density(grid), o.density(grid), atol=1e-9)


def test_constrained_high_type_posterior(gauss):
    x = 0.7
    c = constrained_strategy(gauss, x, 0.5 * optimal_mass(gauss, x))
    grid = np.linspace(cutoff(gauss, x), cutoff(gauss, x) + 8, 300)
    assert np.all(posterior_with_trolls(gauss, c, grid) >= x - 1e-6)
    assert float(c.cdf(np.inf)) == pytest.approx(1.0, abs=1e-12)


def test_constrained_low_type_acceptance(gauss):
    x = 0.4
    c = constrained_strategy(gauss, x, 0.5 * optimal_mass(gauss, x))
    lo, hi = c.support
    assert c.acceptance_threshold == lo
    inside = np.linspace(lo, hi, 200)
    assert np.max(np.abs(posterior_with_trolls(gauss, c, inside) - x)) < 1e-6
    below = np.linspace(lo - 5, lo - 1e-6, 200)
    assert np.all(posterior_with_trolls(gauss, c, below) < x)
    val, _ = integrate.quad(c.density, lo, hi, epsabs=1e-11)
    assert val == pytest.approx(1.0, abs=1e-6)


def test_reach_caps(gauss):
    assert constant_cap(0.3)(0.9) == 0.3
    t = table_cap([0.0, 1.0], [0.0, 1.0])
    assert t(0.25) == 0.25 and t(2.0) == 1.0
    assert np.allclose(t.many([0.1, 0.9]), [0.1, 0.9])
    r = relative_cap(gauss, 0.5)
    xs = np.array([0.1, 0.3, 0.5, 0.7, 1.4])
    assert np.allclose(r.many(xs), [r(x) for x in xs], rtol=1e-12)
    with pytest.raises(DomainError):
        constant_cap(1.5)
    with pytest.raises(DomainError):
        table_cap([0.5, 0.2], [0.1, 0.1])


@settings(max_examples=40, deadline=None)
@given(mu=st.floats(0.2, 4.0), x=st.floats(0.02, 0.98))
def test_pinning_property(mu, x):
    if abs(x - 0.5) < 1e-3:
        return
    m = gaussian_family(mu)
    st_ = optimal_strategy(m, x)
    s = cutoff(m, x)
    probe = s - np.linspace(0, 3, 25) if x < 0.5 else s + np.linspace(0, 3, 25)
    assert np.max(np.abs(posterior_with_trolls(m, st_, probe) - x)) < 1e-6
    assert 0 < st_.alpha < 1
