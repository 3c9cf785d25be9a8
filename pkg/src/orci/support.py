"""Sample space of the extended sample odds ratio and its distribution functions.

Finite odds-ratio values are kept as :class:`fractions.Fraction` so that ties
between outcomes are detected exactly; the infinite value is ``math.inf``.
Both compare correctly against each other and against plain floats.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .counts import TwoArmCounts
from .errors import DomainError
from .kernel import outcome_table

__all__ = [
    "extended_or",
    "Support",
    "support",
    "outcome_probabilities",
    "atom_masses",
    "cdf_F",
    "cdf_G",
    "prob_or_zero",
    "prob_or_one",
    "limit_G_at_zero",
    "limit_F_at_infinity",
    "OutcomeDistribution",
    "outcome_distribution",
    "clear_cache",
]


def _or_value(n_a, n_b, x_a, x_b):
    if (x_a == 0 and x_b == 0) or (x_a == n_a and x_b == n_b):
        return Fraction(1)
    if x_a == n_a and x_b == 0:
        # left open by the case analysis; the limit of the group odds is +inf
        return math.inf
    if (x_a == 0 and x_b >= 1) or (x_a >= 1 and x_b == n_b):
        return Fraction(0)
    if (x_a == n_a and x_b >= 1) or (x_a <= n_a - 1 and x_b == 0):
        return math.inf
    return Fraction(x_a * (n_b - x_b), (n_a - x_a) * x_b)


def extended_or(counts: TwoArmCounts):
    """Sample odds ratio extended to boundary tables.

    Returns a :class:`~fractions.Fraction` for finite values and ``math.inf``
    otherwise.  Tables with no successes or no failures at all map to 1; a
    zero success or failure cell elsewhere maps to 0 or infinity.
    """
    return _or_value(counts.n_a, counts.n_b, counts.x_a, counts.x_b)


@dataclass(frozen=True)
class Support:
    """Distinct extended odds-ratio values of an ``(n_a, n_b)`` experiment.

    Attributes
    ----------
    values : tuple
        Sorted distinct values, 0 first and ``inf`` last.
    index : ndarray of int, shape (n_a + 1, n_b + 1)
        Position in ``values`` of the odds ratio of each outcome.
    """

    n_a: int
    n_b: int
    values: tuple
    index: np.ndarray

    def position(self, t):
        """Index of ``t`` in ``values``, or ``None`` if ``t`` is not a support point."""
        i = bisect.bisect_left(self.values, t)
        if i < len(self.values) and self.values[i] == t:
            return i
        return None

    def count_le(self, t):
        return bisect.bisect_right(self.values, t)

    def count_lt(self, t):
        return bisect.bisect_left(self.values, t)


@lru_cache(maxsize=256)
def support(n_a, n_b):
    if n_a < 1 or n_b < 1:
        raise DomainError(f"group sizes must be positive, got {n_a}, {n_b}")
    grid = [[_or_value(n_a, n_b, i, j) for j in range(n_b + 1)] for i in range(n_a + 1)]
    values = tuple(sorted({v for row in grid for v in row}))
    lookup = {v: k for k, v in enumerate(values)}
    index = np.array([[lookup[v] for v in row] for row in grid], dtype=np.intp)
    index.setflags(write=False)
    return Support(n_a, n_b, values, index)


def _check_ratio(r):
    r = float(r)
    if not (0.0 < r < math.inf):
        raise DomainError(f"odds ratio must satisfy 0 < r < inf, got {r}")
    return r


@lru_cache(maxsize=1024)
def _cached_table(r, n_a, n_b):
    table = outcome_table(r, n_a, n_b)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=1024)
def _cached_masses(r, n_a, n_b):
    sup = support(n_a, n_b)
    masses = np.bincount(sup.index.ravel(), weights=_cached_table(r, n_a, n_b).ravel(),
                         minlength=len(sup.values))
    cumulative = np.concatenate(([0.0], np.cumsum(masses)))
    masses.setflags(write=False)
    cumulative.setflags(write=False)
    return masses, cumulative


def outcome_probabilities(r, n_a, n_b):
    """Read-only ``(n_a + 1, n_b + 1)`` table of outcome probabilities at ``r`` (memoized)."""
    return _cached_table(_check_ratio(r), int(n_a), int(n_b))


def atom_masses(r, n_a, n_b):
    """Probability of each value in ``support(n_a, n_b).values`` at odds ratio ``r``."""
    return _cached_masses(_check_ratio(r), int(n_a), int(n_b))[0]


def _check_t(t):
    if isinstance(t, float) and math.isnan(t):
        raise DomainError("t is NaN")
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")


def cdf_F(r, t, n_a, n_b):
    """``P_r(OR <= t)``, the non-strict distribution function."""
    _check_t(t)
    r = _check_ratio(r)
    _, cumulative = _cached_masses(r, int(n_a), int(n_b))
    k = support(int(n_a), int(n_b)).count_le(t)
    return float(min(cumulative[k], 1.0))


def cdf_G(r, t, n_a, n_b):
    """``P_r(OR < t)``, the strict distribution function."""
    _check_t(t)
    r = _check_ratio(r)
    _, cumulative = _cached_masses(r, int(n_a), int(n_b))
    k = support(int(n_a), int(n_b)).count_lt(t)
    return float(min(cumulative[k], 1.0))


def prob_or_zero(r, n_a, n_b):
    """Mass of the atom at 0."""
    return float(atom_masses(r, n_a, n_b)[0])


def prob_or_one(r, n_a, n_b):
    """Mass of the atom at 1."""
    sup = support(int(n_a), int(n_b))
    return float(atom_masses(r, n_a, n_b)[sup.position(1)])


def limit_G_at_zero(t, n_a):
    """``lim_{r -> 0} P_r(OR < t)``.

    As ``r -> 0`` group B succeeds surely, leaving mass ``n_a/(n_a+1)`` at 0
    and ``1/(n_a+1)`` at 1.
    """
    if t <= 0:
        return 0.0
    if t <= 1:
        return n_a / (n_a + 1.0)
    return 1.0


def limit_F_at_infinity(t, n_a):
    """``lim_{r -> inf} P_r(OR <= t)``.

    As ``r -> inf`` group B fails surely, leaving mass ``1/(n_a+1)`` at 1 and
    the rest at infinity.
    """
    if t < 1:
        return 0.0
    if t < math.inf:
        return 1.0 / (n_a + 1.0)
    return 1.0


@dataclass(frozen=True)
class OutcomeDistribution:
    """All outcomes of an ``(n_a, n_b)`` experiment at odds ratio ``r``, sorted by odds ratio."""

    r: float
    n_a: int
    n_b: int
    entries: tuple  # of (TwoArmCounts, odds ratio, probability)

    def total(self):
        return math.fsum(p for _, _, p in self.entries)


def outcome_distribution(r, n_a, n_b):
    r = _check_ratio(r)
    table = outcome_probabilities(r, n_a, n_b)
    sup = support(int(n_a), int(n_b))
    entries = [
        (TwoArmCounts(n_a, n_b, i, j), sup.values[sup.index[i, j]], float(table[i, j]))
        for i in range(n_a + 1)
        for j in range(n_b + 1)
    ]
    entries.sort(key=lambda e: (e[1], e[0].x_a, e[0].x_b))
    return OutcomeDistribution(r, int(n_a), int(n_b), tuple(entries))


def clear_cache():
    """Drop memoized outcome tables."""
    _cached_table.cache_clear()
    _cached_masses.cache_clear()
