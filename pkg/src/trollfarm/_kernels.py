"""Hot loops of the oracle, compiled with numba when available.

Two kernels dominate oracle runtime:

* ``troll_inverse_cdf`` -- inverse-transform sampling of troll messages by
  per-voter bisection on the closed-form troll cdf;
* ``cell_vote_probs`` -- per-state vote probabilities of many candidate
  troll strategies on a fine signal grid (dominance / exhaustive oracles).

Each has a numba implementation and a pure-numpy one.  The numba path is
used unless ``TROLLFARM_NUMBA=0`` is set in the environment or numba cannot
be imported.  The troll sampler only compiles the built-in Gaussian family;
any other signal model goes through numpy.
"""

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

SAMPLE_XTOL = 1e-10
MAX_EXPAND = 200
MAX_BISECT = 200

LOWER, UPPER = 0, 1


def numba_enabled():
    """Whether the compiled path is selected (read from the environment on each call)."""
    return numba is not None and os.environ.get("TROLLFARM_NUMBA", "1") not in ("0", "false", "no")


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# --- troll message sampling -------------------------------------------------------

def _gap_fn(model, x, side):
    """Monotone gap whose level sets invert the troll cdf (increasing in s)."""
    if side == LOWER:
        return lambda s: x * model.cdf_0(s) - (1.0 - x) * model.cdf_1(s)
    return lambda s: -((1.0 - x) * model.sf(1, s) - x * model.sf(0, s))


def _troll_inverse_numpy(model, u, x, side, lo, hi, gap_lo, gap_hi):
    """Solve ``gap(s) = gap_lo + u (gap_hi - gap_lo)`` per voter by vectorized bisection.

    For the upper side the gap is the negated upper gap, so it increases and
    ``gap_hi = 0`` at ``s = inf``.
    """
    n = u.size
    out = np.empty(n)
    if n == 0:
        return out
    target = gap_lo + u * (gap_hi - gap_lo)

    def g(s, idx):
        sv = np.asarray(s, dtype=float)
        res = np.empty_like(sv)
        for sd in (LOWER, UPPER):
            m = side[idx] == sd
            if np.any(m):
                # per-voter type x enters linearly; evaluate the two state cdfs once
                xx = x[idx][m]
                if sd == LOWER:
                    res[m] = xx * model.cdf_0(sv[m]) - (1.0 - xx) * model.cdf_1(sv[m])
                else:
                    res[m] = -((1.0 - xx) * model.sf(1, sv[m]) - xx * model.sf(0, sv[m]))
        return res - target[idx]

    idx = np.arange(n)
    a = np.where(np.isfinite(lo), lo, hi - 1.0)
    b = np.where(np.isfinite(hi), hi, lo + 1.0)
    width = np.maximum(b - a, 1.0)
    for _ in range(MAX_EXPAND):
        need = g(a, idx) > 0
        if not need.any():
            break
        b = np.where(need, a, b)
        a = np.where(need, a - width, a)
        width = np.where(need, 2.0 * width, width)
    width = np.maximum(b - a, 1.0)
    for _ in range(MAX_EXPAND):
        need = g(b, idx) < 0
        if not need.any():
            break
        a = np.where(need, b, a)
        b = np.where(need, b + width, b)
        width = np.where(need, 2.0 * width, width)
    for _ in range(MAX_BISECT):
        if np.max(b - a) <= SAMPLE_XTOL:
            break
        mid = 0.5 * (a + b)
        neg = g(mid, idx) < 0
        a = np.where(neg, mid, a)
        b = np.where(neg, b, mid)
    out[:] = 0.5 * (a + b)
    return np.clip(out, lo, hi)


def _phi(z):
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _gauss_troll_inverse_impl(u, x, side, lo, hi, gap_lo, gap_hi, mu, sigma):
    n = u.shape[0]
    out = np.empty(n)
    for i in range(n):
        xi = x[i]
        up = side[i] == 1
        target = gap_lo[i] + u[i] * (gap_hi[i] - gap_lo[i])
        a = lo[i] if math.isfinite(lo[i]) else hi[i] - 1.0
        b = hi[i] if math.isfinite(hi[i]) else lo[i] + 1.0
        width = max(b - a, 1.0)

        # gap(s) - target, increasing in s
        for _ in range(200):
            za0 = (a + mu) / sigma
            za1 = (a - mu) / sigma
            if up:
                ga = -((1.0 - xi) * _phi(-za1) - xi * _phi(-za0)) - target
            else:
                ga = xi * _phi(za0) - (1.0 - xi) * _phi(za1) - target
            if ga <= 0.0:
                break
            b = a
            a = a - width
            width *= 2.0
        width = max(b - a, 1.0)
        for _ in range(200):
            zb0 = (b + mu) / sigma
            zb1 = (b - mu) / sigma
            if up:
                gb = -((1.0 - xi) * _phi(-zb1) - xi * _phi(-zb0)) - target
            else:
                gb = xi * _phi(zb0) - (1.0 - xi) * _phi(zb1) - target
            if gb >= 0.0:
                break
            a = b
            b = b + width
            width *= 2.0
        for _ in range(200):
            if b - a <= 1e-10:
                break
            m = 0.5 * (a + b)
            z0 = (m + mu) / sigma
            z1 = (m - mu) / sigma
            if up:
                gm = -((1.0 - xi) * _phi(-z1) - xi * _phi(-z0)) - target
            else:
                gm = xi * _phi(z0) - (1.0 - xi) * _phi(z1) - target
            if gm < 0.0:
                a = m
            else:
                b = m
        s = 0.5 * (a + b)
        if s < lo[i]:
            s = lo[i]
        if s > hi[i]:
            s = hi[i]
        out[i] = s
    return out


_phi = _njit(_phi)
_gauss_troll_inverse = _njit(_gauss_troll_inverse_impl)


def troll_inverse_cdf(model, u, x, side, lo, hi, gap_lo, gap_hi, use_numba=None):
    """Draw troll messages by inverting the closed-form troll cdf.

    Arrays are per voter.  ``side`` is ``LOWER`` (gap ``x F0 - (1-x) F1``) or
    ``UPPER`` (negated upper gap).  ``gap_lo``/``gap_hi`` are the gap at the
    support ends, so the message cdf is ``(gap(s) - gap_lo) / (gap_hi - gap_lo)``.
    """
    if use_numba is None:
        use_numba = numba_enabled()
    args = [np.ascontiguousarray(a, dtype=float) for a in (u, x)]
    side = np.ascontiguousarray(side, dtype=np.int64)
    rest = [np.ascontiguousarray(a, dtype=float) for a in (lo, hi, gap_lo, gap_hi)]
    if use_numba and numba is not None and model.family == "gaussian":
        return _gauss_troll_inverse(args[0], args[1], side, *rest,
                                    model.params["mu"], model.params["sigma"])
    return _troll_inverse_numpy(model, args[0], args[1], side, *rest)


# --- strategy evaluation on a signal grid ------------------------------------------

def _cell_vote_probs_impl(alpha, weights, kprime, p0, p1, cells_per_bin, lower_type, tail0, tail1):
    """Per-state vote probabilities of piecewise-constant troll strategies.

    ``weights[a, b]`` is the troll pmf over bins; cell ``j`` lies in bin
    ``j // cells_per_bin``.  A cell is accepted when the troll term pins the
    posterior at or above the type: ``alpha f~ >= (1-alpha) kappa'`` for
    pro-government types, ``<=`` for anti-government ones.  ``kprime[j]``
    holds ``kappa'`` at the cell midpoint times the cell width, so it is
    commensurate with cell masses.  ``tail0/1`` are the informative masses to
    the right of the window, which every type accepts when no trolls land there.
    """
    n_alt = alpha.shape[0]
    n_cells = kprime.shape[0]
    out = np.empty((n_alt, 2))
    for a in range(n_alt):
        al = alpha[a]
        acc0 = (1.0 - al) * tail0
        acc1 = (1.0 - al) * tail1
        for j in range(n_cells):
            troll = al * weights[a, j // cells_per_bin] / cells_per_bin
            info = (1.0 - al) * kprime[j]
            scale = 1e-12 * (troll + abs(info) + 1e-300)
            if lower_type:
                ok = troll - info >= -scale
            else:
                ok = info - troll >= -scale
            if ok:
                acc0 += (1.0 - al) * p0[j] + troll
                acc1 += (1.0 - al) * p1[j] + troll
        out[a, 0] = acc0
        out[a, 1] = acc1
    return out


_cell_vote_probs_jit = _njit(_cell_vote_probs_impl)


def _cell_vote_probs_numpy(alpha, weights, kprime, p0, p1, cells_per_bin, lower_type, tail0, tail1):
    troll = alpha[:, None] * np.repeat(weights, cells_per_bin, axis=1) / cells_per_bin
    info = (1.0 - alpha)[:, None] * kprime[None, :]
    scale = 1e-12 * (troll + np.abs(info) + 1e-300)
    ok = (troll - info >= -scale) if lower_type else (info - troll >= -scale)
    keep = 1.0 - alpha
    acc0 = keep * tail0 + np.sum(ok * (keep[:, None] * p0[None, :] + troll), axis=1)
    acc1 = keep * tail1 + np.sum(ok * (keep[:, None] * p1[None, :] + troll), axis=1)
    return np.stack([acc0, acc1], axis=1)


def cell_vote_probs(alpha, weights, kprime, p0, p1, cells_per_bin, lower_type, tail0, tail1,
                    use_numba=None, chunk=512):
    """Vote probabilities ``(n_alt, 2)`` for a batch of binned strategies."""
    if use_numba is None:
        use_numba = numba_enabled()
    alpha = np.ascontiguousarray(alpha, dtype=float)
    weights = np.ascontiguousarray(weights, dtype=float)
    kprime, p0, p1 = (np.ascontiguousarray(v, dtype=float) for v in (kprime, p0, p1))
    if use_numba and numba is not None:
        return _cell_vote_probs_jit(alpha, weights, kprime, p0, p1, int(cells_per_bin),
                                    bool(lower_type), float(tail0), float(tail1))
    parts = [
        _cell_vote_probs_numpy(alpha[i:i + chunk], weights[i:i + chunk], kprime, p0, p1,
                               int(cells_per_bin), bool(lower_type), float(tail0), float(tail1))
        for i in range(0, alpha.size, chunk)
    ]
    return np.concatenate(parts) if parts else np.empty((0, 2))
