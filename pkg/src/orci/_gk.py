"""Adaptive Gauss-Kronrod (G10/K21) integration on vector-valued integrands.

Pure numpy implementation; ``_kernel.pyx`` carries the compiled twin of
:func:`outcome_table`.  Both follow the same subdivision scheme so their
results agree to rounding.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NumericError

# Kronrod abscissae on [-1, 1]; the Gauss 10-point nodes sit at odd indices.
XK = np.array([
    -0.995657163025808080735527280689003,
    -0.973906528517171720077964012084452,
    -0.930157491355708226001207180059508,
    -0.865063366688984510732096688423493,
    -0.780817726586416897063717578345042,
    -0.679409568299024406234327365114874,
    -0.562757134668604683339000099272694,
    -0.433395394129247190799265943165784,
    -0.294392862701460198131126603103866,
    -0.148874338981631210884826001129720,
    0.0,
    0.148874338981631210884826001129720,
    0.294392862701460198131126603103866,
    0.433395394129247190799265943165784,
    0.562757134668604683339000099272694,
    0.679409568299024406234327365114874,
    0.780817726586416897063717578345042,
    0.865063366688984510732096688423493,
    0.930157491355708226001207180059508,
    0.973906528517171720077964012084452,
    0.995657163025808080735527280689003,
])
WK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
    0.147739104901338491374841515972068,
    0.142775938577060080797094273138717,
    0.134709217311473325928054001771707,
    0.123491976262065851077958109831074,
    0.109387158802297641899210590325805,
    0.093125454583697605535065465083366,
    0.075039674810919952767043140916190,
    0.054755896574351996031381300244580,
    0.032558162307964727478818972459390,
    0.011694638867371874278064396062192,
])
GAUSS_IDX = np.arange(1, 21, 2)
WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
    0.295524224714752870173892994651338,
    0.269266719309996355091226921569469,
    0.219086362515982043995534934228163,
    0.149451349150580593145776339657697,
    0.066671344308688137593568809893332,
])

ABS_TOL = 1e-10
MAX_SUBDIVISIONS = 1_000_000
INITIAL_PIECES = 16


def initial_breakpoints(r):
    """Starting partition of [0, 1] for the nuisance-parameter integral.

    Adds the point where the group-B success probability crosses 1/2,
    which is where the integrand has its structure when r is extreme.
    """
    pts = [i / INITIAL_PIECES for i in range(INITIAL_PIECES + 1)]
    if math.isfinite(r) and r > 0:
        mid = r / (1.0 + r)
        if all(abs(mid - q) > 1e-12 for q in pts):
            pts.append(mid)
            pts.sort()
    return pts


def integrate(rule, breakpoints, tol=ABS_TOL, max_subdivisions=MAX_SUBDIVISIONS):
    """Integrate a vector-valued function by local adaptive bisection.

    Parameters
    ----------
    rule : callable
        ``rule(lo, hi) -> (kronrod, gauss)`` returning the two estimates of
        the integral over ``[lo, hi]`` as arrays of equal shape.
    breakpoints : sequence of float
        Increasing points defining the initial partition.
    tol : float
        Absolute tolerance on every component of the result.  An interval is
        accepted once its largest component error is at most
        ``tol * width / total_width``.
    max_subdivisions : int
        Bisection budget.

    Returns
    -------
    value : ndarray
    error : float
        Sum of the accepted per-interval error estimates (max over components).
    """
    total_width = breakpoints[-1] - breakpoints[0]
    stack = [(breakpoints[i], breakpoints[i + 1]) for i in range(len(breakpoints) - 2, -1, -1)]
    value = None
    error = 0.0
    splits = 0
    while stack:
        lo, hi = stack.pop()
        kron, gauss = rule(lo, hi)
        err = float(np.max(np.abs(kron - gauss)))
        if err <= tol * (hi - lo) / total_width or hi - lo <= 4 * np.spacing(hi):
            value = kron if value is None else value + kron
            error += err
            continue
        splits += 1
        if splits > max_subdivisions:
            pending = sum(rule(a, b)[0] for a, b in stack) + kron
            estimate = pending if value is None else value + pending
            raise NumericError(
                f"adaptive quadrature did not converge within {max_subdivisions} subdivisions",
                estimate=estimate,
                error=error + err,
            )
        mid = 0.5 * (lo + hi)
        stack.append((mid, hi))
        stack.append((lo, mid))
    return value, error


def log_binomial_coefficients(n):
    lg = [math.lgamma(k + 1.0) for k in range(n + 1)]
    return np.array([lg[n] - lg[k] - lg[n - k] for k in range(n + 1)])


def outcome_table(r, n_a, n_b, tol=ABS_TOL, max_subdivisions=MAX_SUBDIVISIONS):
    """Probabilities of every outcome ``(x_a, x_b)`` at odds ratio ``r``.

    Entry ``[i, j]`` is the integral over ``p_a`` in (0, 1) of
    ``Bin(i; n_a, p_a) * Bin(j; n_b, p_b)`` with
    ``p_b = p_a / (p_a + r (1 - p_a))``.
    """
    lca = log_binomial_coefficients(n_a)
    lcb = log_binomial_coefficients(n_b)
    ka = np.arange(n_a + 1, dtype=float)
    kb = np.arange(n_b + 1, dtype=float)
    log_r = math.log(r)

    def rule(lo, hi):
        half = 0.5 * (hi - lo)
        x = (lo + hi) * 0.5 + half * XK
        log_p = np.log(x)
        log_q = np.log1p(-x)
        log_s = np.log(x + r * (1.0 - x))
        a = np.exp(lca + np.outer(log_p, ka) + np.outer(log_q, n_a - ka))
        b = np.exp(lcb + np.outer(log_p - log_s, kb) + np.outer(log_r + log_q - log_s, n_b - kb))
        kron = half * ((a * WK[:, None]).T @ b)
        gauss = half * ((a[GAUSS_IDX] * WG[:, None]).T @ b[GAUSS_IDX])
        return kron, gauss

    value, _ = integrate(rule, initial_breakpoints(r), tol, max_subdivisions)
    return value
