import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orci.counts import TwoArmCounts
from orci.errors import DomainError, NumericError
from orci.prob import (
    binomial_pmf,
    gauss_2f1_regularized,
    joint_prob_at_pa,
    outcome_prob,
    outcome_prob_hypergeom,
)

from conftest import r1_closed_form

C = TwoArmCounts


def fixed_gauss_legendre(f, order=400):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    u = 0.5 * (nodes + 1.0)
    return 0.5 * float(weights @ f(u))


class TestBinomialPmf:
    def test_certain_failure(self):
        assert binomial_pmf(0, 5, 0.0) == 1.0
        assert binomial_pmf(3, 5, 0.0) == 0.0
        assert binomial_pmf(5, 5, 1.0) == 1.0

    def test_small(self):
        assert binomial_pmf(2, 4, 0.5) == pytest.approx(0.375, abs=1e-15)

    def test_against_exact_rational(self):
        exact = Fraction(math.comb(60, 30), 2**60)
        assert binomial_pmf(30, 60, 0.5) == pytest.approx(float(exact), rel=1e-13)

    def test_large_n_no_overflow(self):
        p = binomial_pmf(5000, 10_000, 0.5)
        assert 0 < p < 0.01
        assert p == pytest.approx(float(mpmath.binomial(10_000, 5000) / mpmath.mpf(2) ** 10_000), rel=1e-10)

    @pytest.mark.parametrize("k,n,p", [(-1, 4, 0.5), (5, 4, 0.5), (1, 0, 0.5), (1, 4, 1.5)])
    def test_domain(self, k, n, p):
        with pytest.raises(DomainError):
            binomial_pmf(k, n, p)


class TestJointProb:
    def test_coin_flips(self):
        assert joint_prob_at_pa(1.0, 0.5, C(1, 1, 1, 1)) == pytest.approx(0.25)

    @pytest.mark.parametrize("p", [0.1, 0.5, 0.83])
    def test_r1_is_product_with_equal_p(self, p):
        c = C(4, 6, 3, 2)
        assert joint_prob_at_pa(1.0, p, c) == pytest.approx(binomial_pmf(3, 4, p) * binomial_pmf(2, 6, p))

    def test_hand_evaluated(self):
        assert joint_prob_at_pa(2.0, 0.5, C(1, 1, 1, 1)) == pytest.approx(0.5 / 3)

    @pytest.mark.parametrize("r,p", [(0.0, 0.5), (math.inf, 0.5), (1.0, 0.0), (1.0, 1.0)])
    def test_domain(self, r, p):
        with pytest.raises(DomainError):
            joint_prob_at_pa(r, p, C(2, 2, 1, 1))


class TestOutcomeProb:
    def test_beta_closed_form_examples(self):
        assert outcome_prob(1.0, C(1, 1, 1, 0)) == pytest.approx(1 / 6, abs=1e-12)
        assert outcome_prob(1.0, C(2, 2, 1, 1)) == pytest.approx(2 / 15, abs=1e-12)

    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
    def test_total_probability(self, r):
        total = math.fsum(outcome_prob(r, C(5, 5, i, j)) for i in range(6) for j in range(6))
        assert total == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("r", [0.3, 2.5])
    def test_matches_fixed_order_quadrature(self, r):
        c = C(3, 4, 2, 1)

        def f(u):
            pb = u / (u + r * (1 - u))
            return (math.comb(3, 2) * u**2 * (1 - u) * math.comb(4, 1) * pb * (1 - pb) ** 3)

        assert outcome_prob(r, c) == pytest.approx(fixed_gauss_legendre(f), abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 15), st.integers(1, 15), st.data())
    def test_r1_closed_form(self, n_a, n_b, data):
        c = C(n_a, n_b, data.draw(st.integers(0, n_a)), data.draw(st.integers(0, n_b)))
        assert outcome_prob(1.0, c) == pytest.approx(r1_closed_form(c), abs=1e-10)

    @pytest.mark.parametrize("x_a,x_b", [(1, 1), (2, 3), (4, 4), (3, 1)])
    def test_interior_outcomes_vanish_at_extremes(self, x_a, x_b):
        c = C(5, 5, x_a, x_b)
        assert outcome_prob(1e-6, c) < 1e-3
        assert outcome_prob(1e6, c) < 1e-3

    def test_domain(self):
        with pytest.raises(DomainError):
            outcome_prob(0.0, C(2, 2, 1, 1))

    def test_budget_exhaustion(self):
        with pytest.raises(NumericError) as info:
            outcome_prob(0.5, C(5, 5, 2, 3), tol=0.0, max_subdivisions=2)
        assert info.value.estimate is not None


class TestHypergeometricPath:
    def test_r1_reduces_to_beta(self):
        c = C(4, 3, 2, 2)
        assert outcome_prob_hypergeom(1.0, c) == pytest.approx(r1_closed_form(c), rel=1e-10)

    @pytest.mark.parametrize("r,c", [(2.0, C(2, 2, 1, 1)), (0.5, C(5, 5, 2, 3)), (7.0, C(6, 3, 0, 3)),
                                     (0.05, C(4, 8, 4, 0))])
    def test_matches_quadrature(self, r, c):
        assert outcome_prob_hypergeom(r, c) == pytest.approx(outcome_prob(r, c), abs=1e-8)

    def test_against_mpmath(self):
        r, c = 3.0, C(4, 5, 2, 3)
        n, s = c.n, c.successes
        ref = (mpmath.factorial(n) * mpmath.binomial(4, 2) * mpmath.binomial(5, 3) / mpmath.binomial(n, s)
               * mpmath.mpf(r) ** (-3) * mpmath.hyp2f1(5, s + 1, n + 2, 1 - 1 / mpmath.mpf(r))
               / mpmath.gamma(n + 2))
        assert outcome_prob_hypergeom(r, c) == pytest.approx(float(ref), rel=1e-9)


class TestGauss2F1:
    @pytest.mark.parametrize("x,y,z", [(2, 1, 3), (0.5, 2.5, 4), (7, 3, 10)])
    def test_t_zero(self, x, y, z):
        assert gauss_2f1_regularized(x, y, z, 0.0) == pytest.approx(1 / math.gamma(z), rel=1e-10)

    @pytest.mark.parametrize("t", [-50.0, -0.3, 0.9])
    def test_x_zero(self, t):
        assert gauss_2f1_regularized(0, 2, 5, t) == pytest.approx(1 / math.gamma(5), rel=1e-10)

    def test_fixed_order_oracle(self):
        x, y, z, t = 2, 1, 3, 0.5
        oracle = fixed_gauss_legendre(lambda u: (1 - u) * (1 - u * t) ** (-x)) / (math.gamma(z - y) * math.gamma(y))
        assert gauss_2f1_regularized(x, y, z, t) == pytest.approx(oracle, rel=1e-10)
        assert oracle == pytest.approx(float(mpmath.hyp2f1(x, y, z, t) / mpmath.gamma(z)), rel=1e-12)

    @pytest.mark.parametrize("x,y,z,t", [(5, 11, 22, -1e5), (10, 6, 22, 0.999), (3, 2, 9, 1.0)])
    def test_against_mpmath(self, x, y, z, t):
        ref = float(mpmath.hyp2f1(x, y, z, t) / mpmath.gamma(z))
        assert gauss_2f1_regularized(x, y, z, t) == pytest.approx(ref, rel=1e-9)

    @pytest.mark.parametrize("x,y,z,t", [(1, 0, 3, 0.5), (1, 3, 3, 0.5), (1, 2, 1, 0.5), (1, 1, 3, 1.5)])
    def test_domain(self, x, y, z, t):
        with pytest.raises(DomainError):
            gauss_2f1_regularized(x, y, z, t)

    def test_divergent(self):
        with pytest.raises(NumericError):
            gauss_2f1_regularized(3, 1, 3, 1.0)


class TestGroupSwap:
    """Integrating p_a uniformly is not the same as integrating p_b uniformly."""

    @pytest.mark.parametrize("c", [C(4, 6, 0, 1), C(12, 10, 7, 4), C(3, 3, 2, 0)])
    def test_swap_invariant_at_r1(self, c):
        assert outcome_prob(1.0, c) == pytest.approx(outcome_prob(1.0, c.swapped()), abs=1e-12)

    @pytest.mark.parametrize("r", [0.4, 3.0])
    def test_swap_picks_up_jacobian(self, r):
        c = C(4, 6, 1, 2)

        def weighted(u):
            pb = u / (u + r * (1 - u))
            pmf = math.comb(4, 1) * u * (1 - u) ** 3 * math.comb(6, 2) * pb**2 * (1 - pb) ** 4
            return pmf * r / (u + r * (1 - u)) ** 2

        assert outcome_prob(1 / r, c.swapped()) == pytest.approx(fixed_gauss_legendre(weighted), abs=1e-12)
        assert abs(outcome_prob(1 / r, c.swapped()) - outcome_prob(r, c)) > 1e-3
