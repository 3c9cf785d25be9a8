# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled outcome-probability table; same subdivision scheme as ``_gk``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, log1p, lgamma, fabs, nextafter, INFINITY
from libc.stdlib cimport malloc, realloc, free

from .errors import NumericError

cnp.import_array()

# pmf entries below this contribute < 1e-30 per node and are skipped
cdef double CUTOFF = 1e-30

cdef double XK[21]
cdef double WK[21]
cdef double WG[10]

XK[:] = [
    -0.995657163025808080735527280689003, -0.973906528517171720077964012084452,
    -0.930157491355708226001207180059508, -0.865063366688984510732096688423493,
    -0.780817726586416897063717578345042, -0.679409568299024406234327365114874,
    -0.562757134668604683339000099272694, -0.433395394129247190799265943165784,
    -0.294392862701460198131126603103866, -0.148874338981631210884826001129720,
    0.0,
    0.148874338981631210884826001129720, 0.294392862701460198131126603103866,
    0.433395394129247190799265943165784, 0.562757134668604683339000099272694,
    0.679409568299024406234327365114874, 0.780817726586416897063717578345042,
    0.865063366688984510732096688423493, 0.930157491355708226001207180059508,
    0.973906528517171720077964012084452, 0.995657163025808080735527280689003,
]
WK[:] = [
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
    0.147739104901338491374841515972068, 0.142775938577060080797094273138717,
    0.134709217311473325928054001771707, 0.123491976262065851077958109831074,
    0.109387158802297641899210590325805, 0.093125454583697605535065465083366,
    0.075039674810919952767043140916190, 0.054755896574351996031381300244580,
    0.032558162307964727478818972459390, 0.011694638867371874278064396062192,
]
WG[:] = [
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338, 0.295524224714752870173892994651338,
    0.269266719309996355091226921569469, 0.219086362515982043995534934228163,
    0.149451349150580593145776339657697, 0.066671344308688137593568809893332,
]


cdef inline double _exp_flush(double v) noexcept nogil:
    # tails below exp(-300) never reach the tolerance; products of them would
    # otherwise go subnormal and stall the accumulation loops
    return exp(v) if v > -300.0 else 0.0


cdef int _binom_row(double* out, int n, double log_p, double log_q, double* lc, int* span) noexcept nogil:
    """Binomial pmf over k = 0..n by ratio recurrence outward from the mode.

    Entries below ``CUTOFF`` are zeroed; ``span`` receives the first and last
    index still nonzero.
    """
    cdef double p = exp(log_p), ratio_up = exp(log_p - log_q), ratio_down = exp(log_q - log_p)
    cdef int mode = <int> ((n + 1) * p)
    cdef int k
    if mode > n:
        mode = n
    for k in range(n + 1):
        out[k] = 0.0
    out[mode] = _exp_flush(lc[mode] + mode * log_p + (n - mode) * log_q)
    span[0] = mode
    span[1] = mode
    if out[mode] < CUTOFF:
        out[mode] = 0.0
        return 0
    for k in range(mode + 1, n + 1):
        out[k] = out[k - 1] * ((n - k + 1.0) / k) * ratio_up
        if out[k] < CUTOFF:
            out[k] = 0.0
            break
        span[1] = k
    for k in range(mode - 1, -1, -1):
        out[k] = out[k + 1] * ((k + 1.0) / (n - k)) * ratio_down
        if out[k] < CUTOFF:
            out[k] = 0.0
            break
        span[0] = k
    return 1


cdef double _rule(double lo, double hi, double r, double log_r, int n_a, int n_b,
                  double* lca, double* lcb, double* a, double* b,
                  double* kron, double* gauss) noexcept nogil:
    """Fill ``kron``/``gauss`` with the two estimates on [lo, hi]; return max |K - G|."""
    cdef int j, i, k, na1 = n_a + 1, nb1 = n_b + 1
    cdef int sa[21][2]
    cdef int sb[21][2]
    cdef bint live[21]
    cdef double half = 0.5 * (hi - lo), centre = 0.5 * (lo + hi)
    cdef double x, log_p, log_q, log_s, lpb, lqb, w, ai, err, d
    cdef double* row
    cdef double* bj
    for j in range(21):
        x = centre + half * XK[j]
        log_p = log(x)
        log_q = log1p(-x)
        log_s = log(x + r * (1.0 - x))
        lpb = log_p - log_s
        lqb = log_r + log_q - log_s
        live[j] = (_binom_row(a + j * na1, n_a, log_p, log_q, lca, sa[j])
                   and _binom_row(b + j * nb1, n_b, lpb, lqb, lcb, sb[j]))
    for i in range(na1 * nb1):
        kron[i] = 0.0
        gauss[i] = 0.0
    for j in range(21):
        if not live[j]:
            continue
        w = half * WK[j]
        bj = b + j * nb1
        for i in range(sa[j][0], sa[j][1] + 1):
            ai = w * a[j * na1 + i]
            row = kron + i * nb1
            for k in range(sb[j][0], sb[j][1] + 1):
                row[k] += ai * bj[k]
        if j % 2 == 0:
            continue
        w = half * WG[j // 2]
        for i in range(sa[j][0], sa[j][1] + 1):
            ai = w * a[j * na1 + i]
            row = gauss + i * nb1
            for k in range(sb[j][0], sb[j][1] + 1):
                row[k] += ai * bj[k]
    err = 0.0
    for i in range(na1 * nb1):
        d = fabs(kron[i] - gauss[i])
        if d > err:
            err = d
    return err


def outcome_table(double r, int n_a, int n_b, double tol=1e-10, long max_subdivisions=1000000):
    """Probabilities of every outcome ``(x_a, x_b)`` at odds ratio ``r``."""
    from ._gk import initial_breakpoints

    cdef list pts = initial_breakpoints(r)
    cdef int na1 = n_a + 1, nb1 = n_b + 1, size = na1 * nb1
    cdef double total_width = pts[len(pts) - 1] - pts[0]
    cdef double log_r = log(r)
    cdef long cap = 64 + len(pts), top = 0, splits = 0
    cdef double* stack_lo = <double*> malloc(cap * sizeof(double))
    cdef double* stack_hi = <double*> malloc(cap * sizeof(double))
    cdef double* lca = <double*> malloc(na1 * sizeof(double))
    cdef double* lcb = <double*> malloc(nb1 * sizeof(double))
    cdef double* a = <double*> malloc(21 * na1 * sizeof(double))
    cdef double* b = <double*> malloc(21 * nb1 * sizeof(double))
    cdef double* kron = <double*> malloc(size * sizeof(double))
    cdef double* gauss = <double*> malloc(size * sizeof(double))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.zeros((na1, nb1))
    cdef double* acc = <double*> out.data
    cdef double lo, hi, mid, err, total_err = 0.0
    cdef int i
    cdef bint failed = False
    try:
        for i in range(na1):
            lca[i] = lgamma(n_a + 1.0) - lgamma(i + 1.0) - lgamma(n_a - i + 1.0)
        for i in range(nb1):
            lcb[i] = lgamma(n_b + 1.0) - lgamma(i + 1.0) - lgamma(n_b - i + 1.0)
        for i in range(len(pts) - 2, -1, -1):
            stack_lo[top] = pts[i]
            stack_hi[top] = pts[i + 1]
            top += 1
        with nogil:
            while top > 0:
                top -= 1
                lo = stack_lo[top]
                hi = stack_hi[top]
                err = _rule(lo, hi, r, log_r, n_a, n_b, lca, lcb, a, b, kron, gauss)
                if err <= tol * (hi - lo) / total_width or hi - lo <= 4 * (nextafter(hi, INFINITY) - hi):
                    for i in range(size):
                        acc[i] += kron[i]
                    total_err += err
                    continue
                splits += 1
                if splits > max_subdivisions:
                    failed = True
                    break
                if top + 2 > cap:
                    cap *= 2
                    stack_lo = <double*> realloc(stack_lo, cap * sizeof(double))
                    stack_hi = <double*> realloc(stack_hi, cap * sizeof(double))
                mid = 0.5 * (lo + hi)
                stack_lo[top] = mid
                stack_hi[top] = hi
                stack_lo[top + 1] = lo
                stack_hi[top + 1] = mid
                top += 2
        if failed:
            raise NumericError(
                f"adaptive quadrature did not converge within {max_subdivisions} subdivisions",
                estimate=out.copy(),
                error=total_err,
            )
    finally:
        free(stack_lo); free(stack_hi); free(lca); free(lcb)
        free(a); free(b); free(kron); free(gauss)
    return out
