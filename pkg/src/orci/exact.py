"""Exact confidence interval for the odds ratio from the distribution of the sample odds ratio.

The lower end solves ``G_r(rhat) = (1 + level)/2`` and the upper end solves
``F_r(rhat) = (1 - level)/2`` in ``r``.  Both maps are nonincreasing in ``r``
(the family is stochastically ordered), so each end is found by bisection on
``log r``.  An end is degenerate (0 or infinity) when the corresponding
equation has no solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .counts import TwoArmCounts
from .errors import DomainError, NumericError
from .support import cdf_F, cdf_G, extended_or, limit_F_at_infinity, limit_G_at_zero

__all__ = [
    "OrInterval",
    "check_level",
    "is_two_sided",
    "minimal_sample_size",
    "exact_ci",
    "reciprocal_interval",
    "left_is_degenerate",
    "right_is_degenerate",
]

TWO_SIDED = "two_sided"
LEFT_OPEN = "left_open_at_zero"
RIGHT_OPEN = "right_open_at_infinity"
UNBOUNDED = "unbounded"

LOWER_START = 1e-8
BISECTION_RTOL = 1e-6
MAX_EXPANSIONS = 20


@dataclass(frozen=True)
class OrInterval:
    """Confidence interval ``(left, right)`` for the odds ratio.

    ``left == 0`` and ``right == math.inf`` mark degenerate ends.
    """

    left: float
    right: float

    def __post_init__(self):
        if not (0.0 <= self.left < self.right):
            raise DomainError(f"invalid interval ({self.left}, {self.right})")

    @property
    def sided(self):
        if self.left == 0.0 and self.right == math.inf:
            return UNBOUNDED
        if self.left == 0.0:
            return LEFT_OPEN
        if self.right == math.inf:
            return RIGHT_OPEN
        return TWO_SIDED

    def contains(self, r):
        return self.left < r < self.right


def check_level(level):
    level = float(level)
    if not 0.0 < level < 1.0:
        raise DomainError(f"confidence level must lie in (0, 1), got {level}")
    return level


def _sidedness_bound(level):
    # exact in the decimal value the caller wrote, so 0.95 gives 39 and not 38.999...
    g = Fraction(repr(check_level(level)))
    return 2 / (1 - g) - 1


def is_two_sided(n_a, level):
    """Whether intervals from a group A of size ``n_a`` have both ends nontrivial."""
    return n_a > _sidedness_bound(level)


def minimal_sample_size(level):
    """Smallest ``n_a`` for which the interval is two-sided."""
    return math.floor(_sidedness_bound(level)) + 1


def left_is_degenerate(rhat, n_a, level):
    if rhat == 0:
        return True
    if rhat < 1 and not is_two_sided(n_a, level):
        return True
    return limit_G_at_zero(rhat, n_a) <= (1.0 + level) / 2.0


def right_is_degenerate(rhat, n_a, level):
    if rhat == math.inf:
        return True
    if rhat >= 1 and not is_two_sided(n_a, level):
        return True
    return limit_F_at_infinity(rhat, n_a) >= (1.0 - level) / 2.0


def _bisect_boundary(above, lo, hi, rtol):
    """Bisect on ``log r`` between ``lo`` (``above`` true) and ``hi`` (``above`` false)."""
    while hi / lo - 1.0 > rtol:
        mid = math.sqrt(lo * hi)
        if above(mid):
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)


def _bracket(above, lo, hi, what):
    for _ in range(MAX_EXPANSIONS):
        if above(lo):
            break
        lo /= 2.0
    else:
        if not above(lo):
            raise NumericError(f"could not bracket the {what} end from below (reached r={lo:g})")
    for _ in range(MAX_EXPANSIONS):
        if not above(hi):
            break
        hi *= 2.0
    else:
        if above(hi):
            raise NumericError(f"could not bracket the {what} end from above (reached r={hi:g})")
    return lo, hi


def _upper_start(n_a, n_b):
    return max(2.0 * (n_a - 1) * (n_b - 1), 2.0)


def exact_ci(counts: TwoArmCounts, level=0.95, rtol=BISECTION_RTOL):
    """Exact confidence interval for the odds ratio of group A versus group B.

    Parameters
    ----------
    counts : TwoArmCounts
    level : float
        Confidence level in (0, 1).
    rtol : float
        Relative width at which bisection stops.

    Returns
    -------
    OrInterval
    """
    if not isinstance(counts, TwoArmCounts):
        raise DomainError(f"expected TwoArmCounts, got {type(counts).__name__}")
    level = check_level(level)
    n_a, n_b = counts.n_a, counts.n_b
    rhat = extended_or(counts)
    upper_tail = (1.0 - level) / 2.0
    lower_tail = (1.0 + level) / 2.0

    if left_is_degenerate(rhat, n_a, level):
        left = 0.0
    else:
        def g_above(r):
            return cdf_G(r, rhat, n_a, n_b) >= lower_tail

        lo, hi = _bracket(g_above, LOWER_START, _upper_start(n_a, n_b), "lower")
        left = _bisect_boundary(g_above, lo, hi, rtol)

    if right_is_degenerate(rhat, n_a, level):
        right = math.inf
    else:
        def f_above(r):
            return cdf_F(r, rhat, n_a, n_b) > upper_tail

        lo, hi = _bracket(f_above, LOWER_START, _upper_start(n_a, n_b), "upper")
        right = _bisect_boundary(f_above, lo, hi, rtol)

    if not left < right:
        raise NumericError(f"solver produced an empty interval ({left}, {right}) for {counts}")
    return OrInterval(left, right)


def reciprocal_interval(interval: OrInterval):
    """Interval for the reciprocal odds ratio, i.e. group B versus group A."""
    left = 0.0 if interval.right == math.inf else 1.0 / interval.right
    right = math.inf if interval.left == 0.0 else 1.0 / interval.left
    return OrInterval(left, right)
