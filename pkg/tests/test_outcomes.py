import numpy as np
import pytest
from scipy import integrate

from trollfarm.electorate import (identity_distortion, is_more_conservative, logistic_electorate,
                                  normal_electorate, scale_distortion)
from trollfarm.errors import DomainError
from trollfarm.outcomes import (Capped, Distorted, Naive, NoTrolls, OptimalTrolls, Regime, VoteShares, classify,
                                limit_share_state0, two_sided_outcome, vote_prob_constrained,
                                vote_prob_with_trolls, vote_share, vote_share_constrained,
                                vote_share_distorted, vote_share_naive, vote_share_no_trolls,
                                vote_share_with_trolls, vote_shares)
from trollfarm.signals import gaussian_family
from trollfarm.strategy import constant_cap, optimal_mass, relative_cap

CONFIGS = [
    (gaussian_family(1.0), normal_electorate(0.55, 0.2)),
    (gaussian_family(0.5), normal_electorate(0.6, 0.3)),
    (gaussian_family(2.0), logistic_electorate(0.55, 0.15)),
]


def test_classify_partition():
    assert classify(0.6, 0.7) is Regime.WINS_BOTH
    assert classify(0.5, 0.5) is Regime.WINS_BOTH
    assert classify(0.49, 0.5) is Regime.AGGREGATES
    assert classify(0.3, 0.49) is Regime.LOSES_BOTH
    with pytest.raises(DomainError):
        classify(0.6, 0.4)
    assert VoteShares.from_pair(0.2, 0.7).share(1) == 0.7


def test_per_type_limits(gauss):
    assert vote_prob_with_trolls(gauss, 0.5 + 1e-7, 0) == pytest.approx(1.0, abs=1e-5)
    assert vote_prob_with_trolls(gauss, 1 - 1e-6, 1) < 1e-3
    xs = np.linspace(0.51, 0.99, 49)
    p0 = np.array([vote_prob_with_trolls(gauss, x, 0) for x in xs])
    p1 = np.array([vote_prob_with_trolls(gauss, x, 1) for x in xs])
    assert np.all(p1 > p0)
    with pytest.raises(DomainError):
        vote_prob_with_trolls(gauss, 0.4, 0)
    with pytest.raises(DomainError):
        vote_prob_with_trolls(gauss, 0.7, 2)


def test_known_values(gauss, electorate):
    # frozen reference values (independent quadrature checked once at build time)
    nt = vote_shares(gauss, electorate, NoTrolls())
    tr = vote_shares(gauss, electorate)
    assert (nt.v0, nt.v1) == pytest.approx((0.1574488, 0.7809974), abs=2e-7)
    assert (tr.v0, tr.v1) == pytest.approx((0.6777115, 0.8768595), abs=2e-7)
    assert nt.regime is Regime.AGGREGATES and tr.regime is Regime.WINS_BOTH


def test_with_trolls_against_direct_quadrature(gauss, electorate):
    for state in (0, 1):
        direct, _ = integrate.quad(lambda x: vote_prob_with_trolls(gauss, x, state) * electorate.pdf(x),
                                   0.5, 1.0, epsabs=1e-11, limit=200)
        assert vote_share_with_trolls(gauss, electorate, state) == pytest.approx(
            float(electorate.cdf(0.5)) + direct, abs=1e-7)


@pytest.mark.parametrize("model,e", CONFIGS)
def test_troll_share_ordering(model, e):
    tr = vote_shares(model, e)
    nt = vote_shares(model, e, NoTrolls())
    assert tr.v0 < tr.v1
    assert tr.v0 >= nt.v0 - 1e-9


def test_uninformative_and_perfect_limits(electorate):
    h_half, h_one = float(electorate.cdf(0.5)), float(electorate.cdf(1.0))
    tiny = gaussian_family(1e-4)
    for variant in (NoTrolls(), OptimalTrolls()):
        sh = vote_shares(tiny, electorate, variant)
        assert sh.v0 == pytest.approx(h_half, abs=1e-3) and sh.v1 == pytest.approx(h_half, abs=1e-3)
    big = gaussian_family(50.0)
    nt = vote_shares(big, electorate, NoTrolls())
    assert nt.v1 == pytest.approx(h_one, abs=1e-3)
    assert nt.v0 == pytest.approx(float(electorate.cdf(0.0)), abs=1e-3)
    tr = vote_shares(big, electorate)
    assert tr.v1 == pytest.approx(h_one, abs=1e-3)
    assert tr.v0 == pytest.approx(limit_share_state0(electorate), abs=1e-3)


def test_wins_both_when_majority_below_half(gauss):
    e = normal_electorate(0.45, 0.3)
    assert vote_shares(gauss, e).regime is Regime.WINS_BOTH


def test_quadrature_error_honest(gauss, electorate):
    for state in (0, 1):
        a, err = vote_share_with_trolls(gauss, electorate, state, tol=1e-7, return_error=True)
        b = vote_share_with_trolls(gauss, electorate, state, tol=5e-8)
        assert abs(a - b) <= max(err, 1e-12) + 5e-8


def test_constrained_endpoints(gauss, electorate):
    for state in (0, 1):
        assert vote_share_constrained(gauss, electorate, constant_cap(1.0), state) == pytest.approx(
            vote_share_with_trolls(gauss, electorate, state), abs=1e-6)
        assert vote_share_constrained(gauss, electorate, constant_cap(0.0), state) == pytest.approx(
            vote_share_no_trolls(gauss, electorate, state), abs=1e-6)


def test_constrained_monotone_in_cap(gauss, electorate):
    caps = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
    for state in (0, 1):
        vals = [vote_share_constrained(gauss, electorate, constant_cap(c), state) for c in caps]
        assert np.all(np.diff(vals) >= -1e-7)


def test_constrained_per_type(gauss):
    x = 0.4
    a = optimal_mass(gauss, x)
    assert vote_prob_constrained(gauss, x, a, 0) == 1.0
    assert vote_prob_constrained(gauss, -0.1, 0.3, 0) == 1.0
    assert vote_prob_constrained(gauss, 1.1, 0.3, 1) == 0.0
    assert 0 < vote_prob_constrained(gauss, x, 0.5 * a, 0) < 1
    rel = relative_cap(gauss, 0.5)
    assert rel(x) == pytest.approx(0.5 * a)


def test_distorted_identity_and_limit(gauss, electorate):
    ident = identity_distortion()
    for state in (0, 1):
        assert vote_share_distorted(gauss, electorate, ident, state) == pytest.approx(
            vote_share_with_trolls(gauss, electorate, state), abs=1e-9)
    h_half = float(electorate.cdf(0.5))
    far = scale_distortion(ident, 1e6)
    for state in (0, 1):
        assert vote_share_distorted(gauss, electorate, far, state) == pytest.approx(h_half, abs=1e-4)


def test_more_conservative_lowers_shares(gauss, electorate):
    ident = identity_distortion()
    grid = [s for s in np.linspace(-5, 5, 41) if s != 0]
    for r_lo, r_hi in [(1.0, 2.0), (2.0, 5.0), (5.0, 30.0)]:
        a, b = scale_distortion(ident, r_lo), scale_distortion(ident, r_hi)
        assert is_more_conservative(b, a, grid)
        sa, sb = vote_shares(gauss, electorate, Distorted(a)), vote_shares(gauss, electorate, Distorted(b))
        assert sb.v0 <= sa.v0 + 1e-9 and sb.v1 <= sa.v1 + 1e-9


def test_naive_affine(gauss, electorate):
    base = vote_share_with_trolls(gauss, electorate, 0)
    assert vote_share_naive(gauss, electorate, 0.0, 0) == base
    assert vote_share_naive(gauss, electorate, 1.0, 0) == 1.0
    assert vote_share_naive(gauss, electorate, 0.3, 0) == 0.3 + 0.7 * base
    assert vote_share(gauss, electorate, Naive(0.3), 0) == 0.3 + 0.7 * base
    with pytest.raises(DomainError):
        vote_share_naive(gauss, electorate, 1.5, 0)


def test_naive_arithmetic_example():
    # phi = 0.3 on a baseline of 0.4
    assert 0.3 * 1 + 0.7 * 0.4 == pytest.approx(0.58)


def test_two_sided():
    assert two_sided_outcome(normal_electorate(0.5, 0.3)) is Regime.WINS_BOTH
    assert two_sided_outcome(normal_electorate(0.6, 0.2)) is Regime.LOSES_BOTH
    assert two_sided_outcome(normal_electorate(0.45, 0.2)) is Regime.WINS_BOTH


def test_dispatch_rejects_unknown(gauss, electorate):
    with pytest.raises(DomainError):
        vote_share(gauss, electorate, object(), 0)
    assert Capped(constant_cap(0.2)).name == "constrained"
