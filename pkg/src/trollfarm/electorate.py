"""Voter-type distributions with their polarization order, and belief distortions."""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import stats

from .errors import ConfigError, DomainError

POLARIZATION_TOL = 1e-9
CONSERVATISM_MARGIN = 1e-12


@dataclass(frozen=True)
class Electorate:
    """Type distribution ``H`` with density and generalized inverse.

    All three callables are vectorized over numpy arrays.
    """

    cdf: Callable
    pdf: Callable
    quantile: Callable
    label: str = ""
    params: dict = field(default_factory=dict)


def _from_frozen(dist, label, params):
    return Electorate(cdf=dist.cdf, pdf=dist.pdf, quantile=dist.ppf, label=label, params=params)


def normal_electorate(mean, sd):
    if not sd > 0:
        raise DomainError(f"sd must be positive, got {sd}")
    return _from_frozen(stats.norm(mean, sd), f"normal({mean:g},{sd:g})",
                        {"family": "normal", "mean": float(mean), "sd": float(sd)})


def logistic_electorate(mean, scale):
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale}")
    return _from_frozen(stats.logistic(mean, scale), f"logistic({mean:g},{scale:g})",
                        {"family": "logistic", "mean": float(mean), "scale": float(scale)})


ELECTORATE_FAMILIES = {
    "normal": (normal_electorate, ("mean", "sd")),
    "logistic": (logistic_electorate, ("mean", "scale")),
}


def electorate_from_config(cfg):
    """Build from ``{"family": "normal", "mean": m, "sd": s, "polarize": r?}``."""
    family = cfg.get("family")
    if family not in ELECTORATE_FAMILIES:
        raise ConfigError("electorate.family",
                          f"unknown family {family!r}; expected one of {sorted(ELECTORATE_FAMILIES)}")
    ctor, names = ELECTORATE_FAMILIES[family]
    extra = set(cfg) - set(names) - {"family", "polarize"}
    if extra:
        raise ConfigError(f"electorate.{sorted(extra)[0]}", f"not a parameter of the {family} family")
    try:
        args = [float(cfg[n]) for n in names]
    except KeyError as exc:
        raise ConfigError(f"electorate.{exc.args[0]}", "missing") from None
    try:
        base = ctor(*args)
        if "polarize" in cfg:
            base = polarize(base, float(cfg["polarize"]))
    except DomainError as exc:
        raise ConfigError("electorate", str(exc)) from exc
    return base


def polarize(base, r):
    """Pivot ``base`` about 1/2: ``H_r(x) = H((1 - r) x + r/2)``."""
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"polarization index r={r} outside [0, 1)")
    if r == 0.0:
        return base
    a, b = 1.0 - r, 0.5 * r

    def quantile(u):
        return (base.quantile(u) - b) / a

    params = dict(base.params)
    # pivots compose: r_total = 1 - (1 - r1)(1 - r2)
    prev = params.get("polarize", 0.0)
    params["polarize"] = 1.0 - (1.0 - prev) * a
    return Electorate(
        cdf=lambda x: base.cdf(a * np.asarray(x, dtype=float) + b),
        pdf=lambda x: a * base.pdf(a * np.asarray(x, dtype=float) + b),
        quantile=quantile,
        label=f"{base.label}|r={r:g}",
        params=params,
    )


@dataclass(frozen=True)
class PolarizationReport:
    holds: bool
    violations: tuple

    def __bool__(self):
        return self.holds


def admits_greater_polarization(candidate, base, grid, tol=POLARIZATION_TOL):
    """Crossing order at 1/2: more mass below on the left, less on the right."""
    grid = np.asarray(list(grid), dtype=float)
    if grid.size == 0:
        raise DomainError("grid is empty")
    hc, hb = candidate.cdf(grid), base.cdf(grid)
    left = (grid <= 0.5) & (hc < hb - tol)
    right = (grid >= 0.5) & (hc > hb + tol)
    bad = grid[left | right]
    return PolarizationReport(bad.size == 0, tuple(float(x) for x in bad))


@dataclass(frozen=True)
class DistortionFn:
    """Strictly increasing signal re-reading ``beta`` with ``beta(0) = 0``."""

    forward: Callable
    inverse: Callable
    label: str = "identity"


def identity_distortion():
    return DistortionFn(forward=lambda s: s, inverse=lambda t: t, label="identity")


def power_distortion(power):
    """``sign(s) |s|**power``: power < 1 underweights large signals."""
    if not power > 0:
        raise DomainError(f"power must be positive, got {power}")

    def fwd(s):
        return np.sign(s) * np.abs(s) ** power

    def inv(t):
        return np.sign(t) * np.abs(t) ** (1.0 / power)

    return DistortionFn(fwd, inv, f"power({power:g})")


def scale_distortion(base, r):
    """``beta_r(s) = beta(s) / r``; larger ``r`` pulls posteriors toward the prior."""
    r = float(r)
    if not r > 0:
        raise DomainError(f"distortion scale r={r} must be positive")
    if r == 1.0:
        return base
    return DistortionFn(
        forward=lambda s: base.forward(s) / r,
        inverse=lambda t: base.inverse(r * np.asarray(t, dtype=float)),
        label=f"{base.label}/{r:g}",
    )


def distortion_from_config(cfg):
    """``{"distortion": "identity"|"power"|"scale", ...}``; ``scale`` wraps ``base``."""
    kind = cfg.get("distortion", "identity")
    if kind == "identity":
        return identity_distortion()
    if kind == "power":
        if "power" not in cfg:
            raise ConfigError("distortion.power", "missing")
        return power_distortion(float(cfg["power"]))
    if kind == "scale":
        if "r" not in cfg:
            raise ConfigError("distortion.r", "missing")
        base = distortion_from_config(cfg.get("base", {"distortion": "identity"}))
        try:
            return scale_distortion(base, float(cfg["r"]))
        except DomainError as exc:
            raise ConfigError("distortion.r", str(exc)) from exc
    raise ConfigError("distortion.distortion", f"unknown distortion {kind!r}")


def is_more_conservative(candidate, base, grid, margin=CONSERVATISM_MARGIN):
    """Strict order: ``candidate`` above ``base`` for s < 0 and below it for s > 0."""
    grid = np.asarray(list(grid), dtype=float)
    if np.any(grid == 0) or not (np.any(grid < 0) and np.any(grid > 0)):
        raise DomainError("grid needs negative and positive points and no zero")
    c = np.asarray(candidate.forward(grid), dtype=float)
    b = np.asarray(base.forward(grid), dtype=float)
    neg, pos = grid < 0, grid > 0
    return bool(np.all(c[neg] > b[neg] + margin) and np.all(c[pos] < b[pos] - margin))


def audit_electorate(e, grid=None):
    problems = []
    if grid is None:
        grid = np.linspace(-2.0, 3.0, 501)
    grid = np.asarray(grid, dtype=float)
    H = e.cdf(grid)
    if np.any(np.diff(H) < 0):
        problems.append("cdf decreasing")
    if np.any(e.pdf(grid) <= 0):
        problems.append("pdf not positive")
    inner = grid[(H > 1e-6) & (H < 1 - 1e-6)]
    if inner.size and np.max(np.abs(e.quantile(e.cdf(inner)) - inner)) > 1e-6:
        problems.append("quantile does not invert cdf")
    return problems
