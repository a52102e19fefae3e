"""State-contingent government vote shares for every model variant."""

from dataclasses import dataclass
import enum
import math

from ._numerics import QUAD_TOL, integrate_1d
from .errors import DomainError
from .signals import cutoff, posterior_no_trolls, quantile
from .strategy import optimal_mass, s_hat


class Regime(str, enum.Enum):
    LOSES_BOTH = "LOSES_BOTH"
    AGGREGATES = "AGGREGATES"
    WINS_BOTH = "WINS_BOTH"


def classify(v0, v1):
    """Election outcome from the two state shares (ties go to the government)."""
    if v0 >= 0.5:
        if v1 < 0.5:
            raise DomainError(f"state-0 share {v0} wins while state-1 share {v1} loses")
        return Regime.WINS_BOTH
    return Regime.AGGREGATES if v1 >= 0.5 else Regime.LOSES_BOTH


@dataclass(frozen=True)
class VoteShares:
    v0: float
    v1: float
    regime: Regime
    abserr: tuple = (0.0, 0.0)

    @classmethod
    def from_pair(cls, v0, v1, abserr=(0.0, 0.0)):
        return cls(float(v0), float(v1), classify(v0, v1), tuple(abserr))

    def share(self, state):
        return self.v1 if state else self.v0

    def as_dict(self):
        return {"v0": self.v0, "v1": self.v1, "regime": self.regime.value}


# --- model variants ----------------------------------------------------------

@dataclass(frozen=True)
class NoTrolls:
    name = "no_trolls"


@dataclass(frozen=True)
class OptimalTrolls:
    name = "optimal"


@dataclass(frozen=True)
class Capped:
    cap: object  # ReachCap
    name = "constrained"


@dataclass(frozen=True)
class Distorted:
    distortion: object  # DistortionFn
    name = "distorted"


@dataclass(frozen=True)
class Naive:
    phi: float
    name = "naive"


def _check_state(state):
    if state not in (0, 1):
        raise DomainError(f"state must be 0 or 1, got {state!r}")


# --- per-type vote probabilities ---------------------------------------------

def vote_prob_no_trolls(model, x, state):
    """``1 - F_state(s*(x))`` for an interior type."""
    return float(model.sf(state, cutoff(model, x)))


def _trolled_prob_at(model, x, s, state):
    """Vote probability of an anti-government type whose acceptance region is [s, inf).

    Closed form ``[D - (2x-1) F_state] / D`` with ``D = x F0 - (1-x) F1`` at ``s``,
    written with survival functions so it stays accurate for large ``s``.
    """
    q0, q1 = float(model.sf(0, s)), float(model.sf(1, s))
    denom = (2.0 * x - 1.0) + ((1.0 - x) * q1 - x * q0)
    weight = x if state else 1.0 - x
    return weight * (q1 - q0) / denom


def vote_prob_with_trolls(model, x, state):
    """Probability a type in (1/2, 1) votes for the government under the optimal strategy."""
    _check_state(state)
    x = float(x)
    if not 0.5 < x < 1.0:
        raise DomainError(f"type x={x} outside (1/2, 1); types <= 1/2 always vote for the government")
    return _trolled_prob_at(model, x, cutoff(model, x), state)


def vote_prob_constrained(model, x, cap, state):
    """Per-type probability under a reach cap ``cap`` (a number in [0, 1])."""
    _check_state(state)
    x = float(x)
    if x <= 0.0:
        return 1.0
    if x >= 1.0:
        return 0.0
    if cap <= 0.0:
        return vote_prob_no_trolls(model, x, state)
    if x == 0.5 or cap >= optimal_mass(model, x):
        return 1.0 if x <= 0.5 else vote_prob_with_trolls(model, x, state)
    if x < 0.5:
        edge = s_hat(model, x, cap)
    else:
        edge = cutoff(model, x)
    return cap + (1.0 - cap) * float(model.sf(state, edge))


def vote_prob_distorted(model, x, distortion, state):
    """Anti-government type whose distorted reading clears ``s*`` only above ``beta^-1(s*)``."""
    _check_state(state)
    x = float(x)
    if not 0.5 < x < 1.0:
        raise DomainError(f"type x={x} outside (1/2, 1)")
    edge = float(distortion.inverse(cutoff(model, x)))
    if edge == math.inf:
        return 0.0
    return _trolled_prob_at(model, x, edge, state)


# --- aggregate shares ----------------------------------------------------------

BREAK_QUANTILES = (1e-9, 1e-6, 1e-3, 0.1, 0.5, 0.9, 1 - 1e-3, 1 - 1e-6, 1 - 1e-9)


def _type_breaks(model):
    """Types whose cutoffs sit at signal quantiles.

    The per-type vote probabilities change over the types these bracket; for
    nearly uninformative signals that is a layer of width O(mu) next to 1/2,
    which adaptive quadrature would otherwise step over.
    """
    xs = set()
    for state in (0, 1):
        for s in quantile(model, state, list(BREAK_QUANTILES)):
            x = posterior_no_trolls(model, float(s))
            if 0.0 < x < 1.0:
                xs.add(round(x, 15))
    return sorted(xs)


def _integrate(func, model, electorate, a, b, tol, what, points=()):
    # keep breakpoints clear of the ends so no Kronrod node lands on them
    margin = 1e-9 * (b - a)
    points = sorted(p for p in set(points) | set(_type_breaks(model)) if a + margin < p < b - margin)
    return integrate_1d(lambda x: func(x) * float(electorate.pdf(x)), a, b, epsabs=tol,
                        points=points, what=what)


def vote_share_no_trolls(model, electorate, state, tol=QUAD_TOL, return_error=False):
    """``H(0) + integral over (0, 1) of (1 - F_state(s*(x))) dH(x)``."""
    _check_state(state)
    val, err = _integrate(lambda x: vote_prob_no_trolls(model, x, state), model, electorate, 0.0, 1.0,
                          tol, "no-trolls share", points=[0.5])
    total = float(electorate.cdf(0.0)) + val
    return (total, err) if return_error else total


def vote_share_with_trolls(model, electorate, state, tol=QUAD_TOL, return_error=False):
    """``H(1/2) + integral over (1/2, 1) of p_state(x) dH(x)``."""
    _check_state(state)
    val, err = _integrate(lambda x: vote_prob_with_trolls(model, x, state), model, electorate, 0.5, 1.0,
                          tol, "troll share")
    total = float(electorate.cdf(0.5)) + val
    return (total, err) if return_error else total


def vote_share_constrained(model, electorate, cap, state, tol=QUAD_TOL, return_error=False):
    """Share when the troll mass aimed at type ``x`` cannot exceed ``cap(x)``."""
    _check_state(state)
    val, err = _integrate(lambda x: vote_prob_constrained(model, x, cap(x), state), model, electorate,
                          0.0, 1.0, tol, "capped share", points=[0.5])
    total = float(electorate.cdf(0.0)) + val
    return (total, err) if return_error else total


def vote_share_distorted(model, electorate, distortion, state, tol=QUAD_TOL, return_error=False):
    """Troll-regime share when voters read signal ``s`` as ``distortion.forward(s)``."""
    _check_state(state)
    val, err = _integrate(lambda x: vote_prob_distorted(model, x, distortion, state), model, electorate,
                          0.5, 1.0, tol, "distorted share")
    total = float(electorate.cdf(0.5)) + val
    return (total, err) if return_error else total


def vote_share_naive(model, electorate, phi, state, tol=QUAD_TOL):
    """A fraction ``phi`` of voters ignores the trolls and is persuaded with certainty."""
    phi = float(phi)
    if not 0.0 <= phi <= 1.0:
        raise DomainError(f"naive fraction phi={phi} outside [0, 1]")
    if phi == 1.0:
        return 1.0
    return phi + (1.0 - phi) * vote_share_with_trolls(model, electorate, state, tol=tol)


def two_sided_outcome(electorate):
    """Both sides run troll farms: the result is fixed by the mass of types at or below 1/2."""
    return Regime.WINS_BOTH if float(electorate.cdf(0.5)) >= 0.5 else Regime.LOSES_BOTH


def vote_share(model, electorate, variant, state, tol=QUAD_TOL, return_error=False):
    """Dispatch on a variant record."""
    if isinstance(variant, NoTrolls):
        return vote_share_no_trolls(model, electorate, state, tol, return_error)
    if isinstance(variant, OptimalTrolls):
        return vote_share_with_trolls(model, electorate, state, tol, return_error)
    if isinstance(variant, Capped):
        return vote_share_constrained(model, electorate, variant.cap, state, tol, return_error)
    if isinstance(variant, Distorted):
        return vote_share_distorted(model, electorate, variant.distortion, state, tol, return_error)
    if isinstance(variant, Naive):
        if return_error:
            base, err = vote_share_with_trolls(model, electorate, state, tol, True)
            phi = float(variant.phi)
            return phi + (1.0 - phi) * base, (1.0 - phi) * err
        return vote_share_naive(model, electorate, variant.phi, state, tol)
    raise DomainError(f"unknown variant {variant!r}")


def vote_shares(model, electorate, variant=OptimalTrolls(), tol=QUAD_TOL):
    """Both state shares and the outcome regime."""
    v0, e0 = vote_share(model, electorate, variant, 0, tol, return_error=True)
    v1, e1 = vote_share(model, electorate, variant, 1, tol, return_error=True)
    return VoteShares.from_pair(v0, v1, (e0, e1))


def limit_share_state0(electorate, tol=QUAD_TOL):
    """Perfect-information limit of the state-0 troll share: ``int_{1/2}^1 H(x) / x^2 dx``."""
    val, _ = integrate_1d(lambda x: float(electorate.cdf(x)) / x**2, 0.5, 1.0, epsabs=tol,
                          what="state-0 limit")
    return val

