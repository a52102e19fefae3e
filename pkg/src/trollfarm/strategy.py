"""The sender's optimal troll strategy, per voter type.

For type ``x`` the auxiliary function

    kappa_x(s) = (x F0(s) - (1 - x) F1(s)) / (1 - 2x)

is an antiderivative of the troll density shape.  Pro-government types
(``x <= 1/2``) are flooded with messages below their cutoff; anti-government
types receive messages above it.  In both cases the troll density pins the
posterior at exactly ``x`` on its support.

Numerically, ``kappa`` is unstable near ``x = 1/2`` (0/0) and, for
``x > 1/2``, near ``x = 1`` (``kappa -> -1``).  The closed forms below are
therefore evaluated through

    D(s) = x F0(s) - (1 - x) F1(s)        (lower-tail accurate)
    E(s) = (1 - x) Q1(s) - x Q0(s)        (upper-tail accurate, Q = 1 - F)

with ``D - E = 2x - 1``.
"""

from dataclasses import dataclass, field
import math
from typing import Callable

import numpy as np

from ._numerics import bisect_increasing, expand_bracket
from .errors import DomainError, PreconditionError, SingularityError
from .signals import cutoff, cutoffs, posterior_no_trolls

HALF_BAND = 1e-9


def _check_type(x):
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"type x={x} outside (0, 1)")
    return x


def _check_not_half(x):
    if abs(x - 0.5) < HALF_BAND:
        raise SingularityError(f"type x={x} is within {HALF_BAND:g} of 1/2 where kappa is 0/0")


def _lower_gap(model, x, s):
    """``x F0(s) - (1 - x) F1(s)``."""
    return x * model.cdf_0(s) - (1.0 - x) * model.cdf_1(s)


def _upper_gap(model, x, s):
    """``(1 - x) Q1(s) - x Q0(s)``."""
    return (1.0 - x) * model.sf(1, s) - x * model.sf(0, s)


def kappa(model, x, s):
    """``(x F0(s) - (1 - x) F1(s)) / (1 - 2x)``."""
    x = _check_type(x)
    _check_not_half(x)
    return _lower_gap(model, x, s) / (1.0 - 2.0 * x)


def kappa_prime(model, x, s):
    """Derivative of :func:`kappa` in ``s``; positive below ``s*`` for x < 1/2 and above it for x > 1/2."""
    return (x * model.density_0(s) - (1.0 - x) * model.density_1(s)) / (1.0 - 2.0 * x)


def optimal_mass(model, x):
    """Fewest trolls that make the type-``x`` voter's best response optimal for the sender.

    Continuous on each side of 1/2 with limit 1 there; returns exactly 1 at x = 1/2.
    """
    x = _check_type(x)
    if x == 0.5:
        return 1.0
    s = cutoff(model, x)
    d = float(_lower_gap(model, x, s))
    if x < 0.5:
        # kappa / (kappa + 1) with kappa = d / (1 - 2x)
        return d / (d + 1.0 - 2.0 * x)
    # (kappa + 1) / kappa = E / D
    return float(_upper_gap(model, x, s)) / d


@dataclass(frozen=True)
class TrollStrategy:
    """Troll mass and message law aimed at one voter type.

    The message cdf is ``weight * (kappa(clip(s)) - kappa(lower))`` on the
    support, computed through the stable gaps, so it is exact rather than a
    quadrature.  ``kind`` is one of ``"none"``, ``"optimal"``, ``"constrained"``.
    """

    x: float
    alpha: float
    density: Callable
    cdf: Callable
    support: tuple
    acceptance_threshold: float
    kind: str = "optimal"
    info: dict = field(default_factory=dict, compare=False)


def _zero(s):
    return np.zeros_like(np.asarray(s, dtype=float))


def no_trolls(x):
    """Degenerate strategy (``alpha = 0``, empty support)."""
    x = float(x)
    if x <= 0.0:
        thr = -math.inf
    elif x >= 1.0:
        thr = math.inf
    else:
        thr = math.nan
    return TrollStrategy(x=x, alpha=0.0, density=_zero, cdf=_zero, support=(math.nan, math.nan),
                         acceptance_threshold=thr, kind="none")


def _lower_strategy(model, x, alpha, lo, hi, thr, kind):
    """Support [lo, hi] below the cutoff (x < 1/2); density ((1-a)/a) kappa'."""
    weight = (1.0 - alpha) / alpha / (1.0 - 2.0 * x)  # multiplies x f0 - (1-x) f1
    d_lo = 0.0 if lo == -math.inf else float(_lower_gap(model, x, lo))

    def density(s):
        s = np.asarray(s, dtype=float)
        val = weight * (x * model.density_0(s) - (1.0 - x) * model.density_1(s))
        return np.where((s >= lo) & (s <= hi), np.maximum(val, 0.0), 0.0)

    def cdf(s):
        s = np.clip(np.asarray(s, dtype=float), lo, hi)
        val = np.where(s == -math.inf, 0.0, weight * (_lower_gap(model, x, s) - d_lo))
        return np.clip(val, 0.0, 1.0)

    return TrollStrategy(x=x, alpha=alpha, density=density, cdf=cdf, support=(lo, hi),
                         acceptance_threshold=thr, kind=kind,
                         info={"side": "lower", "weight": weight, "gap_lo": d_lo})


def _upper_strategy(model, x, alpha, s_star, kind):
    """Support [s*, inf) (x > 1/2); density kappa' / (-1 - kappa(s*))."""
    e_star = float(_upper_gap(model, x, s_star))
    weight = 1.0 / e_star  # multiplies (1-x) f1 - x f0

    def density(s):
        s = np.asarray(s, dtype=float)
        val = weight * ((1.0 - x) * model.density_1(s) - x * model.density_0(s))
        return np.where(s >= s_star, np.maximum(val, 0.0), 0.0)

    def cdf(s):
        s = np.maximum(np.asarray(s, dtype=float), s_star)
        return np.clip(1.0 - weight * _upper_gap(model, x, s), 0.0, 1.0)

    return TrollStrategy(x=x, alpha=alpha, density=density, cdf=cdf, support=(s_star, math.inf),
                         acceptance_threshold=s_star, kind=kind,
                         info={"side": "upper", "weight": weight, "gap_star": e_star})


def optimal_strategy(model, x):
    """Unconstrained optimum for type ``x``; types outside (0, 1) get no trolls."""
    x = float(x)
    if not 0.0 < x < 1.0:
        return no_trolls(x)
    _check_not_half(x)
    s_star = cutoff(model, x)
    alpha = optimal_mass(model, x)
    if x < 0.5:
        return _lower_strategy(model, x, alpha, -math.inf, s_star, -math.inf, "optimal")
    return _upper_strategy(model, x, alpha, s_star, "optimal")


def posterior_with_trolls(model, strategy, s):
    """Posterior on state 1 when a signal may come from the troll farm."""
    a = strategy.alpha
    if a == 0.0:
        if np.ndim(s) == 0:
            return posterior_no_trolls(model, s)
        return np.array([posterior_no_trolls(model, v) for v in np.asarray(s, dtype=float)])
    s = np.asarray(s, dtype=float)
    f0, f1 = model.density_0(s), model.density_1(s)
    ft = a * strategy.density(s)
    num = (1.0 - a) * f1 + ft
    out = num / (num + (1.0 - a) * f0 + ft)
    return float(out) if out.ndim == 0 else out


def s_hat(model, x, cap):
    """Lower end of the capped support for a pro-government type.

    Solves ``kappa(s*) - kappa(s_hat) = cap / (1 - cap)`` on ``(-inf, s*)``.
    """
    x = _check_type(x)
    cap = float(cap)
    if not cap > 0.0:
        raise DomainError(f"cap={cap} must be positive")
    if x > 0.5:
        raise DomainError(f"s_hat is defined for x <= 1/2, got x={x}")
    _check_not_half(x)
    a_star = optimal_mass(model, x)
    if cap >= a_star:
        raise PreconditionError(f"cap={cap} >= optimal mass {a_star}; cap is slack, use optimal_strategy")
    s_star = cutoff(model, x)
    # kappa(s) = gap(s)/(1-2x): target gap(s_hat) = gap(s*) - (1-2x) cap/(1-cap)
    target = float(_lower_gap(model, x, s_star)) - (1.0 - 2.0 * x) * cap / (1.0 - cap)

    def g(s):
        return float(_lower_gap(model, x, s)) - target

    width = max(1.0, model.support_probe[1] - model.support_probe[0]) / 8.0
    lo, hi = expand_bracket(g, s_star - width, s_star)
    return bisect_increasing(g, lo, hi, ftol=1e-13 * (1.0 - 2.0 * x))


def constrained_strategy(model, x, cap):
    """Optimal strategy when at most ``cap`` of type ``x`` can be reached."""
    x = float(x)
    if not 0.0 < x < 1.0:
        return no_trolls(x)
    _check_not_half(x)
    cap = float(cap)
    if not 0.0 < cap <= 1.0:
        if cap == 0.0:
            return no_trolls(x)
        raise DomainError(f"cap={cap} outside (0, 1]")
    a_star = optimal_mass(model, x)
    if cap >= a_star:
        return optimal_strategy(model, x)
    s_star = cutoff(model, x)
    if x < 0.5:
        lo = s_hat(model, x, cap)
        return _lower_strategy(model, x, cap, lo, s_star, lo, "constrained")
    return _upper_strategy(model, x, cap, s_star, "constrained")


@dataclass(frozen=True)
class ReachCap:
    """Upper bound on the troll mass as a function of the voter type."""

    cap: Callable
    label: str = ""
    vectorized: Callable = None  # optional array version of ``cap``

    def __call__(self, x):
        c = float(self.cap(x))
        if not 0.0 <= c <= 1.0:
            raise DomainError(f"reach cap {c} at x={x} outside [0, 1]")
        return c

    def many(self, xs):
        """Caps for an array of types."""
        xs = np.asarray(xs, dtype=float)
        if self.vectorized is None:
            return np.fromiter((self(v) for v in xs), dtype=float, count=xs.size)
        c = np.asarray(self.vectorized(xs), dtype=float)
        if np.any((c < 0.0) | (c > 1.0)):
            raise DomainError("reach cap outside [0, 1]")
        return c


def constant_cap(c):
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"constant cap {c} outside [0, 1]")
    return ReachCap(lambda x: c, f"const({c:g})", lambda xs: np.full(np.shape(xs), c))


def table_cap(xs, caps):
    """Piecewise-linear cap through ``(xs[i], caps[i])``, flat beyond the ends."""
    xs, caps = np.asarray(xs, dtype=float), np.asarray(caps, dtype=float)
    if xs.shape != caps.shape or xs.size == 0 or np.any(np.diff(xs) <= 0):
        raise DomainError("cap table needs matching, strictly increasing type points")
    if np.any((caps < 0) | (caps > 1)):
        raise DomainError("cap table values must lie in [0, 1]")
    return ReachCap(lambda x: float(np.interp(x, xs, caps)), "table", lambda v: np.interp(v, xs, caps))


def relative_cap(model, k):
    """Cap at a fixed fraction ``k`` of each type's optimal troll mass."""
    k = float(k)
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"relative cap {k} outside [0, 1]")

    def one(x):
        return k * optimal_mass(model, x) if 0.0 < x < 1.0 else 0.0

    def many(xs):
        xs = np.asarray(xs, dtype=float)
        out = np.zeros(xs.shape)
        inner = (xs > 0.0) & (xs < 1.0)
        xi = xs[inner]
        s = cutoffs(model, xi)
        d = _lower_gap(model, xi, s)
        e = _upper_gap(model, xi, s)
        with np.errstate(divide="ignore", invalid="ignore"):
            a = np.where(xi < 0.5, d / (d + 1.0 - 2.0 * xi), np.where(xi > 0.5, e / d, 1.0))
        out[inner] = k * a
        return out

    return ReachCap(one, f"rel({k:g})", many)
