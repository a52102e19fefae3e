"""Comparative statics: parameter sweeps with regime thresholds, plus the
polarization / conservatism searches."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging
import math
from typing import Optional

import numpy as np

from ._numerics import bisect_level
from .electorate import polarize, scale_distortion
from .errors import BracketError, PreconditionError
from .outcomes import Distorted, NoTrolls, OptimalTrolls, Regime, vote_shares
from .signals import is_more_informative

log = logging.getLogger(__name__)

MONOTONE_TOL = 1e-7
INDEX_TOL = 1e-6
DEFAULT_TYPE_GRID = tuple(np.round(np.arange(0.02, 0.99, 0.02), 10))


@dataclass
class SweepResult:
    axis_name: str
    axis_values: list
    shares: list
    regimes: list
    thresholds: Optional[tuple] = None
    no_troll_shares: list = field(default_factory=list)
    pair_checks: list = field(default_factory=list)

    def __post_init__(self):
        n = len(self.axis_values)
        if len(self.shares) != n or len(self.regimes) != n:
            raise ValueError("sweep lists must have equal length")
        if self.thresholds is not None:
            lo, hi = self.thresholds
            if not lo < hi:
                raise ValueError(f"thresholds out of order: {self.thresholds}")

    @property
    def monotonicity_violations(self):
        return [c for c in self.pair_checks if c["informative"] and not c["trolls_monotone"]]

    def rows(self):
        """One flat record per axis value (CSV friendly)."""
        out = []
        for i, (t, sh, reg) in enumerate(zip(self.axis_values, self.shares, self.regimes)):
            row = {self.axis_name: t, "v0": sh.v0, "v1": sh.v1, "regime": reg.value}
            if self.no_troll_shares:
                nt = self.no_troll_shares[i]
                row.update(v0_no_trolls=nt.v0, v1_no_trolls=nt.v1)
            if i > 0 and self.pair_checks:
                row["more_informative_than_prev"] = self.pair_checks[i - 1]["informative"]
            out.append(row)
        return out


def _pmap(fn, items, workers):
    if workers and workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(t) for t in items]


def informativeness_sweep(family, electorate, index_values, type_grid=DEFAULT_TYPE_GRID,
                          tol=MONOTONE_TOL, no_trolls=True, axis_name="index", workers=None):
    """Shares along an ordered family of information structures.

    Each adjacent pair is tested with the informativeness checker; for pairs
    that pass, the troll shares must not fall by more than ``tol`` and the
    no-troll state-0 share must not rise by more than ``tol``.
    """
    values = [float(v) for v in index_values]
    if any(b < a for a, b in zip(values, values[1:])):
        raise PreconditionError("index values must be sorted ascending")
    models = [family(v) for v in values]
    shares = _pmap(lambda m: vote_shares(m, electorate, OptimalTrolls()), models, workers)
    base = _pmap(lambda m: vote_shares(m, electorate, NoTrolls()), models, workers) if no_trolls else []
    checks = []
    for i in range(len(values) - 1):
        rep = is_more_informative(models[i + 1], models[i], type_grid)
        a, b = shares[i], shares[i + 1]
        check = {
            "from": values[i],
            "to": values[i + 1],
            "informative": rep.holds,
            "checker_violations": list(rep.violations),
            "trolls_monotone": b.v0 >= a.v0 - tol and b.v1 >= a.v1 - tol,
        }
        if base:
            c, d = base[i], base[i + 1]
            check["no_trolls_v0_falls"] = d.v0 <= c.v0 + tol
            check["no_trolls_v1_rises"] = d.v1 >= c.v1 - tol
        checks.append(check)
    return SweepResult(axis_name, values, shares, [s.regime for s in shares],
                       no_troll_shares=base, pair_checks=checks)


def _share_fn(family, electorate, state):
    def f(t):
        return vote_shares(family(t), electorate).share(state)
    return f


def regime_thresholds(family, electorate, bracket=(-6.0, 6.0), scan_points=25, xtol=INDEX_TOL):
    """Indices ``(r', r'')`` where the state-1 and state-0 shares cross 1/2.

    ``r''`` is ``inf`` when the state-0 share is still below 1/2 at the top
    of the bracket (high-polarization branch).
    """
    h_half, h_one = float(electorate.cdf(0.5)), float(electorate.cdf(1.0))
    if not h_half < 0.5 <= h_one:
        raise PreconditionError(f"needs H(1/2) < 1/2 <= H(1); got H(1/2)={h_half:.6g}, H(1)={h_one:.6g}")
    lo, hi = map(float, bracket)
    grid = np.linspace(lo, hi, scan_points)
    scan = [vote_shares(family(t), electorate) for t in grid]
    for state in (0, 1):
        vals = np.array([s.share(state) for s in scan])
        if np.any(np.diff(vals) < -MONOTONE_TOL):
            raise PreconditionError(f"state-{state} share is not monotone across the bracket")
    v1_lo, v1_hi = scan[0].v1, scan[-1].v1
    if not (v1_lo < 0.5 <= v1_hi):
        raise BracketError(f"bracket [{lo:g}, {hi:g}] does not straddle V1 = 1/2 "
                           f"(V1={v1_lo:.6g} .. {v1_hi:.6g})", lo, hi, v1_lo, v1_hi)
    r1 = _crossing(_share_fn(family, electorate, 1), grid, [s.v1 for s in scan], xtol)
    if scan[-1].v0 < 0.5:
        r0 = math.inf
    else:
        r0 = _crossing(_share_fn(family, electorate, 0), grid, [s.v0 for s in scan], xtol)
    return r1, r0


def _crossing(f, grid, values, xtol):
    """First upward crossing of 1/2 located on the scan, refined by bisection."""
    k = next(i for i, v in enumerate(values) if v >= 0.5)
    if k == 0:
        return float(grid[0])
    a, b = bisect_level(f, float(grid[k - 1]), float(grid[k]), 0.5, xtol=xtol)
    return 0.5 * (a + b)


def regime_sweep(family, electorate, bracket=(-6.0, 6.0), points=49, axis_name="r", workers=None):
    """Sweep over the bracket with the regime thresholds attached."""
    grid = [float(t) for t in np.linspace(bracket[0], bracket[1], points)]
    shares = _pmap(lambda t: vote_shares(family(t), electorate), grid, workers)
    thresholds = regime_thresholds(family, electorate, bracket)
    return SweepResult(axis_name, grid, shares, [s.regime for s in shares], thresholds=thresholds)


def regimes_in_order(regimes):
    """True when the sequence never steps back along LOSES_BOTH -> AGGREGATES -> WINS_BOTH."""
    order = {Regime.LOSES_BOTH: 0, Regime.AGGREGATES: 1, Regime.WINS_BOTH: 2}
    ranks = [order[Regime(r)] for r in regimes]
    return all(b >= a for a, b in zip(ranks, ranks[1:]))


def _scan_then_bisect(shares_at, scan, xtol):
    """Smallest scanned index with an aggregating outcome, refined on V0 = 1/2."""
    prev_t, prev = None, None
    for t in scan:
        cur = shares_at(t)
        if cur.regime is Regime.AGGREGATES:
            if prev is None or prev.v0 < 0.5:
                return float(t)
            _, above = bisect_level(lambda u: shares_at(u).v0, prev_t, float(t), 0.5, xtol=xtol)
            refined = shares_at(above)
            return above if refined.regime is Regime.AGGREGATES else float(t)
        prev_t, prev = float(t), cur
    return None


def find_polarization(base, model, scan=None, xtol=INDEX_TOL):
    """Least polarization ``r`` (on the pivot family) restoring information aggregation.

    Returns ``None`` when no scanned ``r`` aggregates; as ``r -> 1`` the
    state-0 share tends to ``H(1/2) < 1/2``, so a finer scan near 1 helps.
    """
    if scan is None:
        scan = np.linspace(0.0, 0.99, 100)
    scan = sorted(float(r) for r in scan)
    h_half = float(base.cdf(0.5))
    if not h_half < 0.5:
        raise PreconditionError(f"needs H(1/2) < 1/2, got {h_half:.6g}")
    start = vote_shares(model, base)
    if start.regime is not Regime.WINS_BOTH:
        raise PreconditionError(f"base electorate must give WINS_BOTH, got {start.regime.value}")
    found = _scan_then_bisect(lambda r: vote_shares(model, polarize(base, r)), scan, xtol)
    if found is None:
        log.warning("no scanned polarization aggregates; V0 -> H(1/2)=%.6g < 1/2 as r -> 1, refine the scan",
                    h_half)
    return found


def find_conservatism(base_distortion, model, electorate, scan=None, xtol=INDEX_TOL):
    """Least scale ``r >= 1`` for ``beta / r`` that restores information aggregation."""
    if scan is None:
        scan = np.geomspace(1.0, 1e4, 161)
    scan = sorted(float(r) for r in scan)
    if scan[0] < 1.0:
        raise PreconditionError("conservatism scan values must be >= 1")
    h_half = float(electorate.cdf(0.5))
    if not h_half < 0.5:
        raise PreconditionError(f"needs H(1/2) < 1/2, got {h_half:.6g}")

    def shares_at(r):
        return vote_shares(model, electorate, Distorted(scale_distortion(base_distortion, r)))

    start = shares_at(1.0)
    if start.regime is not Regime.WINS_BOTH:
        raise PreconditionError(f"base distortion must give WINS_BOTH, got {start.regime.value}")
    found = _scan_then_bisect(shares_at, scan, xtol)
    if found is None:
        log.warning("no scanned distortion scale aggregates; extend the scan upward")
    return found
