"""Exact and asymptotic confidence intervals for the odds ratio of two binomial samples."""

from .counts import TwoArmCounts
from .coverage import CoverageCurve, coverage_curve, coverage_exact_at, coverage_standard_at
from .errors import DomainError, NumericError, OrciError, UndefinedIntervalError
from .exact import OrInterval, exact_ci, is_two_sided, minimal_sample_size, reciprocal_interval
from .kernel import BACKEND
from .prob import (
    binomial_pmf,
    gauss_2f1_regularized,
    joint_prob_at_pa,
    outcome_prob,
    outcome_prob_hypergeom,
)
from .support import (
    cdf_F,
    cdf_G,
    extended_or,
    outcome_distribution,
    prob_or_one,
    prob_or_zero,
)
from .wald import normal_quantile, standard_ci

__version__ = "0.1.0"
