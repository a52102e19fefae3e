"""Scalar root finding and quadrature shared by the engine modules."""

import math

import numpy as np
from scipy import integrate

from .errors import BracketError, ConvergenceError, NumericalError

MAX_DOUBLINGS = 200
MAX_BISECTIONS = 200
QUAD_TOL = 1e-7


def expand_bracket(g, lo, hi, max_doublings=MAX_DOUBLINGS):
    """Grow ``[lo, hi]`` geometrically until an increasing ``g`` changes sign.

    Returns ``(lo, hi)`` with ``g(lo) <= 0 <= g(hi)``.
    """
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")
    width = hi - lo
    n = 0
    while g(lo) > 0:
        n += 1
        if n > max_doublings:
            raise ConvergenceError(f"lower bracket expansion exceeded {max_doublings} doublings (at {lo:g})")
        hi, lo = lo, lo - width
        width *= 2.0
    width = hi - lo
    while g(hi) < 0:
        n += 1
        if n > max_doublings:
            raise ConvergenceError(f"upper bracket expansion exceeded {max_doublings} doublings (at {hi:g})")
        lo, hi = hi, hi + width
        width *= 2.0
    return lo, hi


def bisect_increasing(g, lo, hi, ftol=1e-10, xtol=0.0, maxiter=MAX_BISECTIONS):
    """Root of an increasing function on a sign-changing bracket.

    Stops when ``|g| <= ftol``, the bracket is narrower than ``xtol``, or the
    bracket has collapsed to adjacent floats.
    """
    g_lo, g_hi = g(lo), g(hi)
    if g_lo > 0 or g_hi < 0:
        raise BracketError("bracket does not straddle the root", lo, hi, g_lo, g_hi)
    if abs(g_lo) <= ftol:
        return lo
    if abs(g_hi) <= ftol:
        return hi
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid
        g_mid = g(mid)
        if abs(g_mid) <= ftol:
            return mid
        if g_mid < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= xtol:
            return 0.5 * (lo + hi)
    if hi - lo <= max(xtol, 4 * np.spacing(max(abs(lo), abs(hi)))):
        return 0.5 * (lo + hi)
    raise ConvergenceError(f"bisection did not converge in {maxiter} steps on [{lo:g}, {hi:g}]")


def solve_increasing(g, lo, hi, ftol=1e-10, xtol=0.0):
    """Bracket-then-bisect for an increasing function with a root somewhere on R."""
    lo, hi = expand_bracket(g, lo, hi)
    return bisect_increasing(g, lo, hi, ftol=ftol, xtol=xtol)


def bisect_level(f, lo, hi, level, xtol=1e-6, maxiter=MAX_BISECTIONS):
    """Bisect for ``f(t) = level`` where ``f(lo)`` and ``f(hi)`` straddle ``level``.

    ``f`` need not be monotone; the bracket invariant is kept. Returns
    ``(t_below, t_above)``: the final bracket ends on the side where ``f(lo)``
    and ``f(hi)`` sit respectively.
    """
    f_lo, f_hi = f(lo) - level, f(hi) - level
    if f_lo == 0:
        return lo, lo
    if f_hi == 0:
        return hi, hi
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(
            f"bracket [{lo:g}, {hi:g}] does not straddle level {level:g}",
            lo, hi, f_lo + level, f_hi + level,
        )
    for _ in range(maxiter):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = f(mid) - level
        if (f_mid > 0) == (f_lo > 0) and f_mid != 0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo, hi


def integrate_1d(func, a, b, epsabs=QUAD_TOL, points=None, what="integral"):
    """Adaptive Gauss-Kronrod quadrature returning ``(value, abserr)``.

    Raises ``NumericalError`` when the reported error exceeds ``epsabs``.
    """
    kwargs = dict(epsabs=epsabs, epsrel=0.0, limit=500, full_output=1)
    if points is not None and math.isfinite(a) and math.isfinite(b):
        kwargs["points"] = [p for p in points if a < p < b]
    out = integrate.quad(func, a, b, **kwargs)
    value, abserr = out[0], out[1]
    if not math.isfinite(value) or abserr > epsabs:
        raise NumericalError(
            f"{what}: quadrature reached abserr={abserr:.3g} > {epsabs:.1g}", achieved=abserr
        )
    return value, abserr


def bisect_increasing_vec(g, lo, hi, xtol=1e-10, maxiter=MAX_BISECTIONS):
    """Elementwise root of an increasing vectorized ``g`` on per-element brackets.

    Brackets are widened geometrically until they straddle zero; elements
    that never do raise :class:`BracketError` reporting the worst offender.
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    width = np.maximum(hi - lo, 1.0)
    for _ in range(MAX_DOUBLINGS):
        bad = g(lo) > 0
        if not bad.any():
            break
        hi = np.where(bad, lo, hi)
        lo = np.where(bad, lo - width, lo)
        width = np.where(bad, 2.0 * width, width)
    width = np.maximum(hi - lo, 1.0)
    for _ in range(MAX_DOUBLINGS):
        bad = g(hi) < 0
        if not bad.any():
            break
        lo = np.where(bad, hi, lo)
        hi = np.where(bad, hi + width, hi)
        width = np.where(bad, 2.0 * width, width)
    f_lo, f_hi = g(lo), g(hi)
    bad = (f_lo > 0) | (f_hi < 0)
    if bad.any():
        i = int(np.argmax(bad))
        raise BracketError("vectorized bracket expansion failed", float(lo[i]), float(hi[i]),
                           float(f_lo[i]), float(f_hi[i]))
    for _ in range(maxiter):
        if lo.size == 0 or np.max(hi - lo) <= xtol:
            break
        mid = 0.5 * (lo + hi)
        neg = g(mid) < 0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
    return 0.5 * (lo + hi)
