"""Independent checks of the closed forms.

* :func:`simulate_election` draws an electorate voter by voter; each voter
  applies Bayes' rule to the mixture of troll and informative signals that
  voter actually faces.
* :func:`dominance_test` and :func:`discretized_exhaustive` search troll
  strategies for one voter type, randomly over binned densities or
  exhaustively over (mass, bin interval) pairs on a coarse grid, and compare
  the analytic optimum with what they find.

Randomness comes from counter-based Philox streams.  Voters are grouped in
fixed blocks of ``BLOCK`` and block ``b`` is seeded by ``(seed, b)``, so the
result does not depend on how blocks are spread over threads.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
import os

import numpy as np
from scipy import special

from . import _kernels
from ._numerics import solve_increasing
from .errors import DomainError
from .outcomes import Capped, Distorted, Naive, NoTrolls, OptimalTrolls, vote_prob_with_trolls, vote_share
from .signals import cutoff, cutoffs, quantile
from .strategy import HALF_BAND, kappa_prime, optimal_strategy

BLOCK = 1 << 16
TIE_TOL = 1e-9
DOMINANCE_MARGIN = 1e-6
FULL_CAPTURE_TOL = 1e-9
WINDOW_TAIL = 1e-12


def default_workers():
    """Worker threads from ``TROLLFARM_THREADS`` (default 1)."""
    raw = os.environ.get("TROLLFARM_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"TROLLFARM_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise DomainError(f"TROLLFARM_THREADS must be a positive integer, got {raw!r}")
    return n


def _stream(seed, *keys):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, keys)])))


# --- Monte Carlo election ----------------------------------------------------------

@dataclass(frozen=True)
class SimConfig:
    n_voters: int
    seed: int
    state: int
    variant: object = OptimalTrolls()

    def __post_init__(self):
        if int(self.n_voters) != self.n_voters or self.n_voters < 1:
            raise DomainError(f"n_voters must be a positive integer, got {self.n_voters}")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.state not in (0, 1):
            raise DomainError(f"state must be 0 or 1, got {self.state!r}")


@dataclass(frozen=True)
class SimReport:
    empirical_share: float
    std_error: float
    analytic_share: float
    z_score: float  # nan when std_error == 0
    n_voters: int
    votes: int
    state: int
    variant: str
    seed: int

    def as_dict(self):
        d = {k: getattr(self, k) for k in ("empirical_share", "std_error", "analytic_share", "n_voters",
                                            "votes", "state", "variant", "seed")}
        d["z_score"] = None if math.isnan(self.z_score) else self.z_score
        return d


def _lower_gap(model, x, s):
    return x * model.cdf_0(s) - (1.0 - x) * model.cdf_1(s)


def _upper_gap(model, x, s):
    return (1.0 - x) * model.sf(1, s) - x * model.sf(0, s)


@dataclass
class _Plan:
    """Per-voter troll plan for interior types.

    ``coef * g(s)`` is the troll term ``alpha * f~(s) / (f0 + f1)`` on
    ``[lo, hi]``, with ``g = x w0 - (1-x) w1`` on the lower side and
    ``(1-x) w1 - x w0`` on the upper side (``w`` = no-troll posteriors).
    """

    alpha: np.ndarray
    side: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    gap_lo: np.ndarray
    gap_hi: np.ndarray
    coef: np.ndarray
    extra_cut: np.ndarray = None  # distorted reading threshold (true-signal scale)

    @classmethod
    def empty(cls, n):
        z = np.zeros(n)
        return cls(alpha=z.copy(), side=np.zeros(n, dtype=np.int64), lo=np.full(n, np.nan),
                   hi=np.full(n, np.nan), gap_lo=z.copy(), gap_hi=z.copy(), coef=z.copy())


def _fill_lower(plan, m, model, x, alpha, lo, s_star):
    d_star = _lower_gap(model, x, s_star)
    d_lo = np.where(np.isneginf(lo), 0.0, _lower_gap(model, x, np.where(np.isneginf(lo), 0.0, lo)))
    plan.alpha[m] = alpha
    plan.side[m] = _kernels.LOWER
    plan.lo[m], plan.hi[m] = lo, s_star
    plan.gap_lo[m], plan.gap_hi[m] = d_lo, d_star
    plan.coef[m] = (1.0 - alpha) / (1.0 - 2.0 * x)


def _fill_upper(plan, m, model, x, alpha, lo):
    e_lo = _upper_gap(model, x, lo)
    ok = e_lo > 0
    plan.alpha[m] = np.where(ok, alpha, 0.0)
    plan.side[m] = _kernels.UPPER
    plan.lo[m], plan.hi[m] = lo, np.inf
    plan.gap_lo[m], plan.gap_hi[m] = -e_lo, 0.0
    plan.coef[m] = np.where(ok, alpha / np.where(ok, e_lo, 1.0), 0.0)


def _alpha_star(model, x, s_star):
    d = _lower_gap(model, x, s_star)
    e = _upper_gap(model, x, s_star)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x < 0.5, d / (d + 1.0 - 2.0 * x), e / np.where(x > 0.5, d, 1.0))


def _optimal_plan(model, x, s_star, plan, mask):
    lo_m = mask & (x < 0.5)
    up_m = mask & (x > 0.5)
    a = _alpha_star(model, x, s_star)
    if lo_m.any():
        _fill_lower(plan, lo_m, model, x[lo_m], a[lo_m], np.full(lo_m.sum(), -np.inf), s_star[lo_m])
    if up_m.any():
        _fill_upper(plan, up_m, model, x[up_m], a[up_m], s_star[up_m])


def _capped_plan(model, x, s_star, plan, mask, cap, use_numba):
    caps = cap.many(x)
    a = _alpha_star(model, x, s_star)
    slack = mask & (caps >= a)
    _optimal_plan(model, x, s_star, plan, slack)
    bind = mask & ~slack & (caps > 0)
    lo_m = bind & (x < 0.5)
    if lo_m.any():
        xl, sl, cl = x[lo_m], s_star[lo_m], caps[lo_m]
        target = _lower_gap(model, xl, sl) - (1.0 - 2.0 * xl) * cl / (1.0 - cl)
        n = xl.size
        s_hat = _kernels.troll_inverse_cdf(model, np.zeros(n), xl, np.zeros(n, dtype=np.int64),
                                           np.full(n, -np.inf), sl, target, target, use_numba=use_numba)
        _fill_lower(plan, lo_m, model, xl, cl, s_hat, sl)
    up_m = bind & (x > 0.5)
    if up_m.any():
        _fill_upper(plan, up_m, model, x[up_m], caps[up_m], s_star[up_m])


def _distorted_plan(model, x, s_star, plan, mask, distortion):
    _optimal_plan(model, x, s_star, plan, mask & (x < 0.5))
    up_m = mask & (x > 0.5)
    plan.extra_cut = np.full(x.size, -np.inf)
    if up_m.any():
        xu = x[up_m]
        # a reading that clears s* earlier than Bayes' rule does not bind
        edge = np.maximum(np.asarray(distortion.inverse(s_star[up_m]), dtype=float), s_star[up_m])
        fin = np.where(np.isfinite(edge), edge, 0.0)
        e = np.where(np.isfinite(edge), _upper_gap(model, xu, fin), 0.0)
        d = (2.0 * xu - 1.0) + e
        _fill_upper(plan, up_m, model, xu, e / d, np.where(np.isfinite(edge), edge, np.inf))
        plan.extra_cut[up_m] = s_star[up_m]


def _no_troll_posterior(model, s):
    """``(w0, w1)``: no-troll posteriors of the two states at ``s``."""
    if model.log_lr is not None:
        llr = model.log_lr(s)
    else:
        with np.errstate(divide="ignore"):
            llr = np.log(model.density_1(s)) - np.log(model.density_0(s))
    return special.expit(-llr), special.expit(llr)


def _simulate_block(model, electorate, state, variant, seed, block, size, use_numba):
    """Government votes among ``size`` voters of block ``block``."""
    rng = _stream(seed, block)
    u = rng.random((4, size))
    x = np.asarray(electorate.quantile(u[0]), dtype=float)
    votes = int(np.count_nonzero(x <= 0.0))
    inner = (x > 0.0) & (x < 1.0)
    x, u_src, u_sig, u_naive = x[inner], u[1][inner], u[2][inner], u[3][inner]
    n = x.size
    if n == 0:
        return votes
    # types within HALF_BAND of 1/2 face alpha -> 1 and are persuaded in the limit
    near_half = np.abs(x - 0.5) < HALF_BAND
    votes += int(near_half.sum())
    x, u_src, u_sig, u_naive = x[~near_half], u_src[~near_half], u_sig[~near_half], u_naive[~near_half]
    n = x.size
    s_star = cutoffs(model, x)
    plan = _Plan.empty(n)
    every = np.ones(n, dtype=bool)
    naive = np.zeros(n, dtype=bool)
    if isinstance(variant, OptimalTrolls):
        _optimal_plan(model, x, s_star, plan, every)
    elif isinstance(variant, Capped):
        _capped_plan(model, x, s_star, plan, every, variant.cap, use_numba)
    elif isinstance(variant, Distorted):
        _distorted_plan(model, x, s_star, plan, every, variant.distortion)
    elif isinstance(variant, Naive):
        naive = u_naive < float(variant.phi)
        _optimal_plan(model, x, s_star, plan, ~naive)
    elif not isinstance(variant, NoTrolls):
        raise DomainError(f"unknown variant {variant!r}")

    trolled = u_src < plan.alpha
    s = np.empty(n)
    informative = ~trolled & ~naive
    s[informative] = quantile(model, state, u_sig[informative])
    if trolled.any():
        t = trolled
        s[t] = _kernels.troll_inverse_cdf(model, u_sig[t], x[t], plan.side[t], plan.lo[t], plan.hi[t],
                                          plan.gap_lo[t], plan.gap_hi[t], use_numba=use_numba)
    if naive.any():
        # naive voters are reached for sure; any message above the cutoff persuades them
        s[naive] = s_star[naive] - np.log1p(-u_sig[naive])

    w0, w1 = _no_troll_posterior(model, s)
    g = np.where(plan.side == _kernels.LOWER, x * w0 - (1.0 - x) * w1, (1.0 - x) * w1 - x * w0)
    on = (plan.alpha > 0) & (s >= plan.lo) & (s <= plan.hi)
    term = np.where(on, plan.coef * np.maximum(g, 0.0), 0.0)
    keep = np.where(naive, 1.0, 1.0 - plan.alpha)
    post = (keep * w1 + term) / (keep + 2.0 * term)
    vote = post >= x - TIE_TOL
    if plan.extra_cut is not None:
        vote &= np.asarray(_distortion_reading(variant, s), dtype=float) >= plan.extra_cut
    return votes + int(np.count_nonzero(vote))


def _distortion_reading(variant, s):
    return variant.distortion.forward(s)


def simulate_election(model, electorate, config, workers=None, use_numba=None, tol=1e-9):
    """Monte Carlo vote share for ``config`` and its analytic counterpart.

    Voters of type ``x <= 0`` vote for the government and ``x >= 1`` against it.
    An interior voter is reached by the troll farm with probability equal to
    the troll mass for that type.  Reached voters get a troll message
    (inverse transform on the troll cdf), the rest a draw from ``F_state``.
    The voter supports the government iff the posterior under the mixture
    is at least ``x``.

    Under the distorted variant an anti-government voter additionally needs
    the distorted reading ``beta(s)`` to clear ``s*(x)``; the farm answers
    by pinning messages at ``beta^-1(s*(x))`` and above.  Naive voters are
    reached with certainty and update as if no trolls existed.
    """
    if workers is None:
        workers = default_workers()
    if use_numba is None:
        use_numba = _kernels.numba_enabled()
    n, state = int(config.n_voters), int(config.state)
    blocks = [(b, min(BLOCK, n - b * BLOCK)) for b in range((n + BLOCK - 1) // BLOCK)]

    def run(item):
        return _simulate_block(model, electorate, state, config.variant, config.seed, item[0], item[1], use_numba)

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run, blocks))
    else:
        counts = [run(item) for item in blocks]
    votes = sum(counts)
    p = votes / n
    se = math.sqrt(p * (1.0 - p) / n)
    analytic = float(vote_share(model, electorate, config.variant, state, tol=tol))
    z = (p - analytic) / se if se > 0 else math.nan
    return SimReport(empirical_share=p, std_error=se, analytic_share=analytic, z_score=z, n_voters=n,
                     votes=votes, state=state, variant=config.variant.name, seed=int(config.seed))


# --- strategy evaluation on a signal grid -------------------------------------------

def signal_window(model, x=None, tail=WINDOW_TAIL):
    """Window ``[lo, hi]`` with ``F0(lo) = tail`` and ``Q1(hi) = tail``, widened to contain ``s*(x)``."""
    lo_p, hi_p = model.support_probe
    lo = solve_increasing(lambda s: float(model.cdf_0(s)) - tail, lo_p, hi_p, ftol=tail * 1e-3)
    hi = solve_increasing(lambda s: tail - float(model.sf(1, s)), lo_p, hi_p, ftol=tail * 1e-3)
    if x is not None:
        s = cutoff(model, x)
        lo, hi = min(lo, s - 1.0), max(hi, s + 1.0)
    return float(lo), float(hi)


@dataclass(frozen=True)
class _Grid:
    edges: np.ndarray
    mids: np.ndarray
    p0: np.ndarray
    p1: np.ndarray
    kprime: np.ndarray  # kappa'(mid) * cell width
    tail0: float
    tail1: float
    bins: int
    cells_per_bin: int


def _cell_masses(model, state, edges):
    c = model.cdf(state, edges)
    q = model.sf(state, edges)
    return np.where(edges[1:] <= 0.0, np.diff(c), -np.diff(q))


def _grid(model, x, window, bins, cells_per_bin):
    lo, hi = window
    edges = np.linspace(lo, hi, bins * cells_per_bin + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    h = (hi - lo) / (bins * cells_per_bin)
    return _Grid(edges=edges, mids=mids, p0=_cell_masses(model, 0, edges), p1=_cell_masses(model, 1, edges),
                 kprime=kappa_prime(model, x, mids) * h, tail0=float(model.sf(0, hi)),
                 tail1=float(model.sf(1, hi)), bins=bins, cells_per_bin=cells_per_bin)


def _accepts(x, troll, info):
    scale = 1e-9 * (np.abs(troll) + np.abs(info)) + 1e-300
    return (troll - info >= -scale) if x < 0.5 else (info - troll >= -scale)


def strategy_vote_probs(model, x, strategy, window=None, cells=8192):
    """``(p0, p1)`` for an arbitrary troll strategy, by cell summation.

    The voter's best response is decided at each cell midpoint by comparing
    the troll density with ``(1 - alpha) kappa'``; masses are exact cdf
    differences.  Signals outside the window are decided at its edges.
    """
    x = float(x)
    if not 0.0 < x < 1.0 or abs(x - 0.5) < HALF_BAND:
        raise DomainError(f"type x={x} must lie in (0, 1) away from 1/2")
    if window is None:
        window = signal_window(model, x)
    lo, hi = window
    edges = np.linspace(lo, hi, cells + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    a = float(strategy.alpha)
    if a > 0:
        ft = np.asarray(strategy.density(mids), dtype=float)
        tcdf = np.asarray(strategy.cdf(edges), dtype=float)
        tmass = np.diff(tcdf)
        t_left, t_right = float(tcdf[0]), 1.0 - float(tcdf[-1])
        f_edge = np.asarray(strategy.density(np.array([lo, hi])), dtype=float)
    else:
        ft = tmass = np.zeros(cells)
        t_left = t_right = 0.0
        f_edge = np.zeros(2)
    ok = _accepts(x, a * ft, (1.0 - a) * kappa_prime(model, x, mids))
    ok_edge = _accepts(x, a * f_edge, (1.0 - a) * kappa_prime(model, x, np.array([lo, hi])))
    out = []
    for state in (0, 1):
        cell = (1.0 - a) * _cell_masses(model, state, edges) + a * tmass
        left = (1.0 - a) * float(model.cdf(state, lo)) + a * t_left
        right = (1.0 - a) * float(model.sf(state, hi)) + a * t_right
        out.append(float(np.sum(cell[ok]) + left * ok_edge[0] + right * ok_edge[1]))
    return tuple(out)


def analytic_vote_probs(model, x):
    """Per-type ``(p0, p1)`` under the optimal strategy."""
    if x <= 0.5:
        return 1.0, 1.0
    return vote_prob_with_trolls(model, x, 0), vote_prob_with_trolls(model, x, 1)


def _dominates(p, q, margin):
    """``p`` weakly above ``q`` in both coordinates and strictly (by ``margin``) in one."""
    p, q = np.atleast_2d(p), np.asarray(q)
    weak = np.all(p >= q - margin, axis=1)
    strict = np.any(p > q + margin, axis=1)
    return weak & strict


# --- dominance test --------------------------------------------------------------

@dataclass
class DominanceReport:
    x: float
    candidate_alpha: float
    candidate_probs: tuple
    n_alternatives: int
    n_dominating: int
    n_cheaper_full_capture: int
    witnesses: list = field(default_factory=list)

    @property
    def passed(self):
        return self.n_dominating == 0 and self.n_cheaper_full_capture == 0

    def as_dict(self):
        return {"x": self.x, "candidate_alpha": self.candidate_alpha,
                "candidate_probs": list(self.candidate_probs), "n_alternatives": self.n_alternatives,
                "n_dominating": self.n_dominating, "n_cheaper_full_capture": self.n_cheaper_full_capture,
                "passed": self.passed, "witnesses": self.witnesses}


def _random_binned(rng, n, bins):
    """Random troll masses and bin pmfs: half spread over all bins, half on a random run."""
    alpha = rng.random(n)
    weights = rng.dirichlet(np.ones(bins), size=n)
    runs = rng.random(n) < 0.5
    ends = np.sort(rng.integers(0, bins, size=(n, 2)), axis=1)
    idx = np.arange(bins)
    outside = (idx[None, :] < ends[:, :1]) | (idx[None, :] > ends[:, 1:])
    weights = np.where(runs[:, None] & outside, 0.0, weights)
    return alpha, weights / weights.sum(axis=1, keepdims=True)


def dominance_test(model, x, candidate, n_alternatives=10_000, seed=0, bins=64, cells_per_bin=64,
                   window=None, max_witnesses=5, use_numba=None):
    """Search random binned strategies for one that Pareto-dominates ``candidate``.

    Alternative 0 is the optimal strategy itself (evaluated like the
    candidate); the rest are random.  For ``x < 1/2`` an alternative that
    reaches vote probability 1 in both states with less troll mass than the
    candidate also counts against it.
    """
    x = float(x)
    if not 0.0 < x < 1.0 or abs(x - 0.5) < HALF_BAND:
        raise DomainError(f"type x={x} must lie in (0, 1) away from 1/2")
    if n_alternatives < 1:
        raise DomainError("n_alternatives must be positive")
    if window is None:
        window = signal_window(model, x)
    grid = _grid(model, x, window, bins, cells_per_bin)
    cand = np.array(strategy_vote_probs(model, x, candidate, window))
    best = np.array(strategy_vote_probs(model, x, optimal_strategy(model, x), window))

    rng = _stream(seed, 0xD0)
    alpha, weights = _random_binned(rng, n_alternatives - 1, bins)
    probs = _kernels.cell_vote_probs(alpha, weights, grid.kprime, grid.p0, grid.p1, cells_per_bin,
                                     x < 0.5, grid.tail0, grid.tail1, use_numba=use_numba)
    alpha = np.concatenate([[optimal_strategy(model, x).alpha], alpha])
    probs = np.vstack([best, probs])

    dom = _dominates(probs, cand, DOMINANCE_MARGIN)
    cheap = np.zeros_like(dom)
    if x < 0.5:
        cheap = (alpha < candidate.alpha - DOMINANCE_MARGIN) & np.all(probs >= 1.0 - FULL_CAPTURE_TOL, axis=1)
    witnesses = []
    for i in np.flatnonzero(dom | cheap)[:max_witnesses]:
        w = {"index": int(i), "alpha": float(alpha[i]), "p0": float(probs[i, 0]), "p1": float(probs[i, 1]),
             "reason": "dominates" if dom[i] else "cheaper_full_capture"}
        w["weights"] = "optimal_strategy" if i == 0 else [float(v) for v in weights[i - 1]]
        witnesses.append(w)
    return DominanceReport(x=x, candidate_alpha=float(candidate.alpha), candidate_probs=tuple(map(float, cand)),
                           n_alternatives=int(n_alternatives), n_dominating=int(dom.sum()),
                           n_cheaper_full_capture=int(cheap.sum()), witnesses=witnesses)


# --- exhaustive search ------------------------------------------------------------

@dataclass
class ExhaustiveReport:
    x: float
    bins: int
    window: tuple
    frontier: list
    analytic_probs: tuple
    gap: float  # how far the frontier falls short of the analytic point
    excess: float  # how far the frontier exceeds it (should be ~0)
    bound: float

    @property
    def within_bound(self):
        return self.gap <= self.bound and self.excess <= self.bound

    def as_dict(self):
        return {"x": self.x, "bins": self.bins, "window": list(self.window), "frontier": self.frontier,
                "analytic_probs": list(self.analytic_probs), "gap": self.gap, "excess": self.excess,
                "bound": self.bound, "within_bound": self.within_bound}


def pareto_frontier(points):
    """Indices of the non-dominated rows of an ``(n, 2)`` array (ties kept once)."""
    pts = np.asarray(points, dtype=float)
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    keep, best1 = [], -np.inf
    for i in order:
        if pts[i, 1] > best1:
            keep.append(int(i))
            best1 = pts[i, 1]
    return keep


def discretized_exhaustive(model, x, bins=16, alpha_grid=None, window=None, cells_per_bin=64,
                           use_numba=None):
    """Brute force over troll pmfs uniform on a contiguous run of bins.

    The ``2 / bins`` bound on the distance between the analytic point and the
    discrete frontier is a heuristic for the discretization error.
    """
    x = float(x)
    if not 1 <= int(bins) <= 24:
        raise DomainError(f"bins must be in 1..24, got {bins}")
    if not 0.0 < x < 1.0 or abs(x - 0.5) < HALF_BAND:
        raise DomainError(f"type x={x} must lie in (0, 1) away from 1/2")
    bins = int(bins)
    if alpha_grid is None:
        alpha_grid = np.round(np.linspace(0.01, 0.99, 99), 10)
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    if window is None:
        window = signal_window(model, x, tail=1e-7)
    grid = _grid(model, x, window, bins, cells_per_bin)
    runs = [(i, j) for i in range(bins) for j in range(i, bins)]
    pmf = np.zeros((len(runs), bins))
    for k, (i, j) in enumerate(runs):
        pmf[k, i:j + 1] = 1.0 / (j - i + 1)
    alpha = np.repeat(alpha_grid, len(runs))
    weights = np.tile(pmf, (alpha_grid.size, 1))
    probs = _kernels.cell_vote_probs(alpha, weights, grid.kprime, grid.p0, grid.p1, cells_per_bin,
                                     x < 0.5, grid.tail0, grid.tail1, use_numba=use_numba)
    front = pareto_frontier(probs)
    bin_edges = grid.edges[::cells_per_bin]
    frontier = []
    for k in front:
        i, j = runs[k % len(runs)]
        frontier.append({"alpha": float(alpha[k]), "first_bin": i, "last_bin": j,
                         "s_from": float(bin_edges[i]), "s_to": float(bin_edges[j + 1]),
                         "p0": float(probs[k, 0]), "p1": float(probs[k, 1])})
    a = np.array(analytic_vote_probs(model, x))
    fp = probs[front]
    gap = float(np.min(np.max(np.maximum(a - fp, 0.0), axis=1)))
    excess = float(max(0.0, np.max(np.min(fp - a, axis=1))))
    return ExhaustiveReport(x=x, bins=bins, window=tuple(map(float, window)), frontier=frontier,
                            analytic_probs=tuple(map(float, a)), gap=gap, excess=excess, bound=2.0 / bins)
