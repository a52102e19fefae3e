"""Numerical equilibrium engine for elections with a troll farm.

A sender who prefers the government intercepts each voter's private signal
with a type-dependent probability and replaces it with a message of its
choosing.  The package computes the sender's optimal strategy per voter type,
the resulting state-contingent vote shares, their comparative statics, and
independent Monte Carlo / brute-force checks of every closed form.
"""

__version__ = "0.1.0"

from .errors import (BracketError, ConfigError, ConvergenceError, DomainError, NumericalError,
                     PreconditionError, SingularityError, TrollFarmError)
from .signals import (SignalModel, audit_signal_model, cutoff, gaussian_family, gaussian_index_family,
                      gennorm_family, is_more_informative, likelihood_ratio, posterior_no_trolls,
                      signal_model_from_config)
from .electorate import (DistortionFn, Electorate, admits_greater_polarization, identity_distortion,
                         is_more_conservative, logistic_electorate, normal_electorate, polarize,
                         power_distortion, scale_distortion)
from .strategy import (ReachCap, TrollStrategy, constant_cap, constrained_strategy, kappa, optimal_mass,
                       optimal_strategy, posterior_with_trolls, relative_cap, s_hat, table_cap)
from .outcomes import (Capped, Distorted, Naive, NoTrolls, OptimalTrolls, Regime, VoteShares, classify,
                       two_sided_outcome, vote_share, vote_share_constrained, vote_share_distorted,
                       vote_share_naive, vote_share_no_trolls, vote_share_with_trolls, vote_shares)
from .comparative import (SweepResult, find_conservatism, find_polarization, informativeness_sweep,
                          regime_sweep, regime_thresholds)
from .oracle import (SimConfig, SimReport, discretized_exhaustive, dominance_test, simulate_election)

__all__ = [
    'BracketError', 'ConfigError', 'ConvergenceError', 'DomainError', 'NumericalError', 'PreconditionError',
    'SingularityError', 'TrollFarmError', 'SignalModel', 'audit_signal_model', 'cutoff', 'gaussian_family',
    'gaussian_index_family', 'gennorm_family', 'is_more_informative', 'likelihood_ratio',
    'posterior_no_trolls', 'signal_model_from_config', 'DistortionFn', 'Electorate',
    'admits_greater_polarization', 'identity_distortion', 'is_more_conservative', 'logistic_electorate',
    'normal_electorate', 'polarize', 'power_distortion', 'scale_distortion', 'ReachCap', 'TrollStrategy',
    'constant_cap', 'constrained_strategy', 'kappa', 'optimal_mass', 'optimal_strategy',
    'posterior_with_trolls', 'relative_cap', 's_hat', 'table_cap', 'Capped', 'Distorted', 'Naive',
    'NoTrolls', 'OptimalTrolls', 'Regime', 'VoteShares', 'classify', 'two_sided_outcome', 'vote_share',
    'vote_share_constrained', 'vote_share_distorted', 'vote_share_naive', 'vote_share_no_trolls',
    'vote_share_with_trolls', 'vote_shares', 'SweepResult', 'find_conservatism', 'find_polarization',
    'informativeness_sweep', 'regime_sweep', 'regime_thresholds', 'SimConfig', 'SimReport',
    'discretized_exhaustive', 'dominance_test', 'simulate_election',
]
