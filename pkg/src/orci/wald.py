"""Asymptotic (Wald, log-scale) confidence interval for the odds ratio."""

from __future__ import annotations

import math
from statistics import NormalDist

from .counts import TwoArmCounts
from .errors import DomainError, UndefinedIntervalError
from .exact import OrInterval, check_level

__all__ = ["normal_quantile", "standard_ci", "log_standard_error", "sample_or"]

_STD_NORMAL = NormalDist()


def normal_quantile(delta):
    """Quantile of the standard normal distribution at probability ``delta``."""
    delta = float(delta)
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    return _STD_NORMAL.inv_cdf(delta)


def _zero_cell(counts):
    for name, value in (("x_a", counts.x_a), ("n_a - x_a", counts.f_a),
                        ("x_b", counts.x_b), ("n_b - x_b", counts.f_b)):
        if value == 0:
            return name
    return None


def sample_or(counts: TwoArmCounts):
    """Plain cross-product ratio; requires every cell to be nonzero."""
    cell = _zero_cell(counts)
    if cell is not None:
        raise UndefinedIntervalError(f"sample odds ratio undefined: cell {cell} is zero", cell)
    return counts.x_a * counts.f_b / (counts.f_a * counts.x_b)


def log_standard_error(counts: TwoArmCounts):
    return math.sqrt(1 / counts.x_a + 1 / counts.f_a + 1 / counts.x_b + 1 / counts.f_b)


def standard_ci(counts: TwoArmCounts, level=0.95):
    """Wald interval ``OR * exp(u * se)`` with ``u`` the ``(1 -/+ level)/2`` normal quantiles.

    No continuity or zero-cell correction is applied.

    Raises
    ------
    UndefinedIntervalError
        If any of the four cells is zero.
    """
    level = check_level(level)
    cell = _zero_cell(counts)
    if cell is not None:
        raise UndefinedIntervalError(
            f"standard interval does not exist: cell {cell} is zero for {counts}", cell)
    or_hat = sample_or(counts)
    se = log_standard_error(counts)
    left = or_hat * math.exp(normal_quantile((1.0 - level) / 2.0) * se)
    right = or_hat * math.exp(normal_quantile((1.0 + level) / 2.0) * se)
    return OrInterval(left, right)
