import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orci import kernel
from orci._gk import initial_breakpoints, integrate, outcome_table as py_table
from orci.counts import TwoArmCounts
from orci.errors import NumericError

from conftest import r1_closed_form

needs_ext = pytest.mark.skipif(kernel._compiled is None, reason="compiled kernel not built")


@needs_ext
@pytest.mark.parametrize("r", [1e-8, 1e-3, 0.37, 1.0, 4.0, 1e6])
@pytest.mark.parametrize("n_a,n_b", [(1, 1), (2, 5), (13, 7), (60, 70)])
def test_backends_agree(r, n_a, n_b):
    a = kernel.outcome_table(r, n_a, n_b, backend="python")
    b = kernel.outcome_table(r, n_a, n_b, backend="cython")
    assert a.shape == b.shape == (n_a + 1, n_b + 1)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-13)


@pytest.mark.parametrize("backend", ["python", pytest.param("cython", marks=needs_ext)])
@pytest.mark.parametrize("r", [1e-6, 0.1, 1.0, 10.0, 1e6])
def test_table_normalised(backend, r):
    table = kernel.outcome_table(r, 9, 11, backend=backend)
    assert table.min() >= 0
    assert abs(table.sum() - 1) < 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 25), st.integers(1, 25), st.data())
def test_r1_matches_beta_closed_form(n_a, n_b, data):
    table = kernel.outcome_table(1.0, n_a, n_b)
    x_a = data.draw(st.integers(0, n_a))
    x_b = data.draw(st.integers(0, n_b))
    assert table[x_a, x_b] == pytest.approx(r1_closed_form(TwoArmCounts(n_a, n_b, x_a, x_b)), abs=1e-10)


def test_breakpoints_include_half_crossing():
    pts = initial_breakpoints(1e-8)
    assert pts[0] == 0.0 and pts[-1] == 1.0
    assert any(abs(p - 1e-8 / (1 + 1e-8)) < 1e-20 for p in pts)
    assert pts == sorted(pts)


def test_integrate_polynomial_exact():
    def rule(lo, hi):
        from orci._gk import GAUSS_IDX, WG, WK, XK
        half = 0.5 * (hi - lo)
        x = 0.5 * (lo + hi) + half * XK
        f = np.stack([x**5, np.exp(x)], axis=1)
        return half * (WK @ f), half * (WG @ f[GAUSS_IDX])

    value, err = integrate(rule, [0.0, 1.0])
    np.testing.assert_allclose(value, [1 / 6, math.e - 1], atol=1e-14)
    assert err < 1e-10


def test_subdivision_budget_raises_with_estimate():
    with pytest.raises(NumericError) as info:
        py_table(1e-8, 40, 40, tol=1e-16, max_subdivisions=3)
    assert info.value.estimate is not None
    assert info.value.estimate.shape == (41, 41)


@needs_ext
def test_compiled_budget_raises():
    with pytest.raises(NumericError):
        kernel.outcome_table(1e-8, 40, 40, tol=1e-16, max_subdivisions=3, backend="cython")


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernel.outcome_table(1.0, 2, 2, backend="fortran")


def test_env_forces_python_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, ORCI_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", "import orci; print(orci.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
