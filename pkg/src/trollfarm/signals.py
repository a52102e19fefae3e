"""Information structures: state-conditional signal laws with the MLRP.

A :class:`SignalModel` bundles the densities and cdfs of the voters' private
signal in each state.  Everything downstream, from cutoffs to vote shares,
is expressed through these four functions, so user-supplied families plug
in without touching the rest of the engine.
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np
from scipy import special, stats

from ._numerics import bisect_increasing_vec, solve_increasing
from .errors import ConfigError, DomainError

CUTOFF_TOL = 1e-10
TINY_DENSITY = 1e-300

RealFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SignalModel:
    """State-conditional signal densities and cdfs.

    ``sf_0``/``sf_1`` (survival functions) and ``log_lr`` are optional
    accuracy helpers for the upper tail; when absent they are derived from the
    cdfs and densities.  ``ppf_0``/``ppf_1`` (quantiles) speed up sampling and
    fall back to bisection on the cdf.  ``family``/``params`` identify built-in families so the
    compiled simulation kernels can evaluate them without Python callbacks.
    """

    density_0: RealFn
    density_1: RealFn
    cdf_0: RealFn
    cdf_1: RealFn
    cutoff_closed_form: Optional[Callable[[float], float]] = None
    support_probe: tuple = (-10.0, 10.0)
    sf_0: Optional[RealFn] = None
    sf_1: Optional[RealFn] = None
    log_lr: Optional[RealFn] = None
    ppf_0: Optional[RealFn] = None
    ppf_1: Optional[RealFn] = None
    family: Optional[str] = None
    params: dict = field(default_factory=dict)

    def pdf(self, state, s):
        return self.density_1(s) if state else self.density_0(s)

    def cdf(self, state, s):
        return self.cdf_1(s) if state else self.cdf_0(s)

    def sf(self, state, s):
        fn = self.sf_1 if state else self.sf_0
        if fn is None:
            return 1.0 - self.cdf(state, s)
        return fn(s)


def gaussian_family(mu, sigma=1.0):
    """Signals ``N((2*theta - 1) * mu, sigma**2)``; likelihood ratio ``exp(2 mu s / sigma^2)``."""
    mu, sigma = float(mu), float(sigma)
    if not (mu > 0 and sigma > 0):
        raise DomainError(f"gaussian family needs mu > 0 and sigma > 0, got mu={mu}, sigma={sigma}")
    norm = 1.0 / (sigma * math.sqrt(2.0 * math.pi))
    slope = 2.0 * mu / sigma**2

    def pdf(loc):
        return lambda s: norm * np.exp(-0.5 * ((np.asarray(s, dtype=float) - loc) / sigma) ** 2)

    def cdf(loc):
        return lambda s: special.ndtr((np.asarray(s, dtype=float) - loc) / sigma)

    def sf(loc):
        return lambda s: special.ndtr((loc - np.asarray(s, dtype=float)) / sigma)

    def cutoff(x):
        x = np.asarray(x, dtype=float)
        return np.log(x / (1.0 - x)) / slope

    def ppf(loc):
        return lambda u: loc + sigma * special.ndtri(np.asarray(u, dtype=float))

    half = max(10.0 * sigma, 2.0 * mu)
    return SignalModel(
        density_0=pdf(-mu),
        density_1=pdf(mu),
        cdf_0=cdf(-mu),
        cdf_1=cdf(mu),
        cutoff_closed_form=cutoff,
        support_probe=(-half, half),
        sf_0=sf(-mu),
        sf_1=sf(mu),
        log_lr=lambda s: slope * np.asarray(s, dtype=float),
        ppf_0=ppf(-mu),
        ppf_1=ppf(mu),
        family="gaussian",
        params={"mu": mu, "sigma": sigma},
    )


def gaussian_index_family(r, sigma=1.0):
    """Gaussian structure indexed on the whole real line by ``mu = exp(r)``."""
    return gaussian_family(math.exp(r), sigma)


def gennorm_family(mu, shape=1.5, scale=1.0):
    """Generalized-normal location pair at ``(2*theta - 1) * mu``, density ``~ exp(-|z|**shape)``.

    ``shape > 1`` keeps the likelihood ratio strictly increasing and unbounded
    (``shape = 2`` is Gaussian up to scale).  The cutoff has no closed form,
    so this family exercises the bisection path.
    """
    mu, shape, scale = float(mu), float(shape), float(scale)
    if not (mu > 0 and scale > 0 and shape > 1):
        raise DomainError(f"gennorm family needs mu > 0, scale > 0, shape > 1; "
                          f"got mu={mu}, shape={shape}, scale={scale}")
    dist = {loc: stats.gennorm(shape, loc=loc, scale=scale) for loc in (-mu, mu)}

    def log_lr(s):
        s = np.asarray(s, dtype=float)
        return (np.abs((s + mu) / scale) ** shape - np.abs((s - mu) / scale) ** shape)

    half = max(10.0 * scale, 2.0 * mu)
    return SignalModel(
        density_0=dist[-mu].pdf,
        density_1=dist[mu].pdf,
        cdf_0=dist[-mu].cdf,
        cdf_1=dist[mu].cdf,
        support_probe=(-half, half),
        sf_0=dist[-mu].sf,
        sf_1=dist[mu].sf,
        log_lr=log_lr,
        ppf_0=dist[-mu].ppf,
        ppf_1=dist[mu].ppf,
        family="gennorm",
        params={"mu": mu, "shape": shape, "scale": scale},
    )


SIGNAL_FAMILIES = {
    "gaussian": (gaussian_family, ("mu",), {"sigma": 1.0}),
    "gennorm": (gennorm_family, ("mu",), {"shape": 1.5, "scale": 1.0}),
}


def signal_model_from_config(cfg):
    """Build a model from ``{"family": "gaussian", "mu": ..., "sigma": ...}``."""
    family = cfg.get("family")
    if family not in SIGNAL_FAMILIES:
        raise ConfigError("signal.family", f"unknown family {family!r}; expected one of {sorted(SIGNAL_FAMILIES)}")
    ctor, required, defaults = SIGNAL_FAMILIES[family]
    kwargs = dict(defaults)
    for key in required:
        if key not in cfg:
            raise ConfigError(f"signal.{key}", "missing")
    for key, value in cfg.items():
        if key == "family":
            continue
        if key not in kwargs and key not in required:
            raise ConfigError(f"signal.{key}", f"not a parameter of the {family} family")
        kwargs[key] = float(value)
    try:
        return ctor(**kwargs)
    except DomainError as exc:
        raise ConfigError("signal", str(exc)) from exc


def likelihood_ratio(model, s):
    """``f1(s) / f0(s)``."""
    f0 = float(model.density_0(s))
    if not f0 > TINY_DENSITY:
        raise DomainError(f"state-0 density underflows at s={s!r}; likelihood ratio undefined")
    return float(model.density_1(s)) / f0


def posterior_no_trolls(model, s):
    """Posterior that the state is 1 after signal ``s`` with a 1/2 prior."""
    if model.log_lr is not None:
        return float(special.expit(model.log_lr(s)))
    f0, f1 = float(model.density_0(s)), float(model.density_1(s))
    if not (f0 > 0 or f1 > 0):
        raise DomainError(f"both densities vanish at s={s!r}")
    return f1 / (f0 + f1)


def cutoff(model, x):
    """Signal ``s*(x)`` at which a type-``x`` voter is indifferent: ``m(s) = x/(1-x)``."""
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"type x={x} is outside (0, 1); no finite cutoff")
    if model.cutoff_closed_form is not None:
        return float(model.cutoff_closed_form(x))
    target = x / (1.0 - x)
    lo, hi = model.support_probe
    return solve_increasing(lambda s: likelihood_ratio(model, s) - target, lo, hi, ftol=CUTOFF_TOL)


def cutoffs(model, xs):
    """Vectorized :func:`cutoff` for an array of interior types."""
    xs = np.asarray(xs, dtype=float)
    if np.any((xs <= 0.0) | (xs >= 1.0)):
        raise DomainError("types must lie in (0, 1)")
    if model.cutoff_closed_form is not None:
        return np.asarray(model.cutoff_closed_form(xs), dtype=float)
    logit = np.log(xs) - np.log1p(-xs)
    if model.log_lr is not None:
        g = lambda s: model.log_lr(s) - logit
    else:
        g = lambda s: np.log(model.density_1(s)) - np.log(model.density_0(s)) - logit
    lo, hi = model.support_probe
    return bisect_increasing_vec(g, np.full(xs.shape, lo), np.full(xs.shape, hi), xtol=CUTOFF_TOL)


def quantile(model, state, u):
    """Inverse cdf ``F_state^{-1}(u)``, by bisection when no closed form is attached."""
    fn = model.ppf_1 if state else model.ppf_0
    u = np.asarray(u, dtype=float)
    if fn is not None:
        return np.asarray(fn(u), dtype=float)
    lo, hi = model.support_probe
    return bisect_increasing_vec(lambda s: model.cdf(state, s) - u,
                                 np.full(u.shape, lo), np.full(u.shape, hi), xtol=CUTOFF_TOL)


@dataclass(frozen=True)
class InformativenessReport:
    holds: bool
    violations: tuple  # types x at which either inequality fails

    def __bool__(self):
        return self.holds


def is_more_informative(candidate, baseline, type_grid, tol=1e-9):
    """Check the cutoff-based informativeness order on a grid of types.

    ``candidate`` is more informative when, at every type, it makes the voter
    vote against the government more often in state 0 and less often in
    state 1 than ``baseline`` does.
    """
    grid = [float(x) for x in type_grid]
    if not grid:
        raise DomainError("type grid is empty")
    violations = []
    for x in grid:
        if not 0.0 < x < 1.0:
            raise DomainError(f"grid type {x} outside (0, 1)")
        sc, sb = cutoff(candidate, x), cutoff(baseline, x)
        ok0 = candidate.cdf_0(sc) >= baseline.cdf_0(sb) - tol
        ok1 = candidate.cdf_1(sc) <= baseline.cdf_1(sb) + tol
        if not (ok0 and ok1):
            violations.append(x)
    return InformativenessReport(not violations, tuple(violations))


def audit_signal_model(model, grid=None, fd_tol=1e-6):
    """Probe-grid audit of the model assumptions; returns a list of problems."""
    if grid is None:
        lo, hi = model.support_probe
        grid = np.linspace(lo, hi, 1000)
    grid = np.asarray(grid, dtype=float)
    problems = []
    f0, f1 = model.density_0(grid), model.density_1(grid)
    if np.any(f0 < 0) or np.any(f1 < 0):
        problems.append("negative density")
    if not math.isclose(float(model.density_0(0.0)), float(model.density_1(0.0)), rel_tol=1e-12):
        problems.append("f0(0) != f1(0)")
    if model.log_lr is not None:
        llr = model.log_lr(grid)
    else:
        ok = (f0 > TINY_DENSITY) & (f1 > TINY_DENSITY)
        llr = np.log(f1[ok]) - np.log(f0[ok])
    if np.any(np.diff(llr) <= 0):
        problems.append("likelihood ratio not strictly increasing")
    F0, F1 = model.cdf_0(grid), model.cdf_1(grid)
    if np.any(F0 < F1):
        problems.append("F0 < F1 somewhere (first-order dominance fails)")
    if np.any(np.diff(F0) < 0) or np.any(np.diff(F1) < 0):
        problems.append("cdf decreasing")
    h = 1e-5
    for state, dens in ((0, f0), (1, f1)):
        fd = (model.cdf(state, grid + h) - model.cdf(state, grid - h)) / (2 * h)
        if np.max(np.abs(fd - dens)) > fd_tol:
            problems.append(f"cdf_{state} inconsistent with density_{state}")
    return problems
