"""Probability kernels of the two-arm binomial model parametrised by the odds ratio.

For a true odds ratio ``r`` and group-A success probability ``p_a`` the
group-B success probability is ``p_b = p_a / (p_a + r (1 - p_a))``.  The
nuisance ``p_a`` is integrated out uniformly over (0, 1), leaving a
distribution over outcomes that depends on ``r`` alone.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import integrate as sp_integrate

from . import _gk
from .counts import TwoArmCounts
from .errors import DomainError, NumericError

__all__ = [
    "binomial_pmf",
    "joint_prob_at_pa",
    "outcome_prob",
    "outcome_prob_hypergeom",
    "gauss_2f1_regularized",
    "log_gauss_2f1_regularized",
    "group_b_probability",
]


def _check_ratio(r):
    r = float(r)
    if not (0.0 < r < math.inf):
        raise DomainError(f"odds ratio must satisfy 0 < r < inf, got {r}")
    return r


def _log_comb(n, k):
    return math.lgamma(n + 1.0) - math.lgamma(k + 1.0) - math.lgamma(n - k + 1.0)


def binomial_pmf(k, n, p):
    """``C(n, k) p^k (1 - p)^(n - k)`` evaluated in log space, with ``0^0 = 1``."""
    if n < 1 or int(n) != n:
        raise DomainError(f"n must be a positive integer, got {n}")
    if int(k) != k or not 0 <= k <= n:
        raise DomainError(f"k={k} outside [0, {n}]")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p={p} outside [0, 1]")
    k, n = int(k), int(n)
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == n else 0.0
    return math.exp(_log_comb(n, k) + k * math.log(p) + (n - k) * math.log1p(-p))


def group_b_probability(r, p_a):
    """Success probability in group B implied by odds ratio ``r`` and ``p_a``."""
    return p_a / (p_a + r * (1.0 - p_a))


def joint_prob_at_pa(r, p_a, counts: TwoArmCounts):
    """Probability of ``counts`` at a fixed nuisance value ``p_a``."""
    r = _check_ratio(r)
    if not 0.0 < p_a < 1.0:
        raise DomainError(f"p_a must lie in (0, 1), got {p_a}")
    p_b = group_b_probability(r, p_a)
    return binomial_pmf(counts.x_a, counts.n_a, p_a) * binomial_pmf(counts.x_b, counts.n_b, p_b)


def outcome_prob(r, counts: TwoArmCounts, tol=_gk.ABS_TOL, max_subdivisions=_gk.MAX_SUBDIVISIONS):
    """Probability of ``counts`` at odds ratio ``r`` with ``p_a`` integrated out.

    Adaptive G10/K21 quadrature to absolute tolerance ``tol``.

    Raises
    ------
    NumericError
        If the subdivision budget runs out; carries the best estimate.
    """
    r = _check_ratio(r)
    log_r = math.log(r)
    n_a, n_b, x_a, x_b = counts.n_a, counts.n_b, counts.x_a, counts.x_b
    log_c = _log_comb(n_a, x_a) + _log_comb(n_b, x_b)

    def rule(lo, hi):
        half = 0.5 * (hi - lo)
        x = 0.5 * (lo + hi) + half * _gk.XK
        log_p = np.log(x)
        log_q = np.log1p(-x)
        log_s = np.log(x + r * (1.0 - x))
        f = np.exp(
            log_c
            + (x_a + x_b) * log_p
            + (n_a - x_a) * log_q
            + (n_b - x_b) * (log_r + log_q)
            - n_b * log_s
        )
        return half * (_gk.WK @ f), half * (_gk.WG @ f[_gk.GAUSS_IDX])

    value, _ = _gk.integrate(rule, _gk.initial_breakpoints(r), tol, max_subdivisions)
    return float(min(max(value, 0.0), 1.0))


def log_gauss_2f1_regularized(x, y, z, t, rtol=1e-10):
    """Natural log of :func:`gauss_2f1_regularized`."""
    if not y > 0:
        raise DomainError(f"need y > 0, got y={y}")
    if not z > y:
        raise DomainError(f"need z > y, got y={y}, z={z}")
    if t > 1:
        raise DomainError(f"need t <= 1, got t={t}")
    if t == 1 and z - y - x <= 0:
        raise NumericError(f"integrand diverges at u=1 for t=1 and z-y-x={z - y - x} <= 0")

    log_norm = -math.lgamma(z - y) - math.lgamma(y)

    def log_f(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            return (y - 1) * np.log(u) + (z - y - 1) * np.log1p(-u) - x * np.log1p(-u * t)

    # shift by the interior maximum so the integrand stays O(1)
    grid = np.linspace(0.0, 1.0, 1025)[1:-1]
    values = log_f(grid)
    peak = int(np.argmax(values))
    shift = float(values[peak])

    def integrand(u):
        if u <= 0.0 or u >= 1.0:
            return 0.0
        return math.exp(float(log_f(u)) - shift)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sp_integrate.IntegrationWarning)
        value, abserr, info = sp_integrate.quad(
            integrand, 0.0, 1.0, epsabs=0.0, epsrel=rtol, limit=2000,
            points=[float(grid[peak])], full_output=True,
        )[:3]
    if not (value > 0 and math.isfinite(value)) or abserr > max(1e3 * rtol, 1e-8) * value:
        raise NumericError(
            f"Euler integral did not converge (x={x}, y={y}, z={z}, t={t})",
            estimate=value, error=abserr,
        )
    return math.log(value) + shift + log_norm


def gauss_2f1_regularized(x, y, z, t, rtol=1e-10):
    """Euler-integral form of the Gauss hypergeometric function divided by Gamma(z).

    Computes ``1 / (Gamma(z - y) Gamma(y)) * int_0^1 u^(y-1) (1-u)^(z-y-1) (1-ut)^(-x) du``
    for ``z > y > 0`` and ``t <= 1``.
    """
    return math.exp(log_gauss_2f1_regularized(x, y, z, t, rtol))


def outcome_prob_hypergeom(r, counts: TwoArmCounts):
    """Closed-form counterpart of :func:`outcome_prob` through the hypergeometric function.

    ``n! C(n_a, x_a) C(n_b, x_b) / C(n, s) * r^(-x_b) * 2F1reg(n_b, s + 1; n + 2; 1 - 1/r)``
    with ``s = x_a + x_b``.  All factors are combined in log space.
    """
    r = _check_ratio(r)
    n, s = counts.n, counts.successes
    log_prefactor = (
        math.lgamma(n + 1.0)
        + _log_comb(counts.n_a, counts.x_a)
        + _log_comb(counts.n_b, counts.x_b)
        - _log_comb(n, s)
        - counts.x_b * math.log(r)
    )
    return math.exp(log_prefactor + log_gauss_2f1_regularized(counts.n_b, s + 1, n + 2, 1.0 - 1.0 / r))
