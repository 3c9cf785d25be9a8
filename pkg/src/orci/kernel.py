"""Backend selection for the outcome-probability table.

The compiled kernel is used when it imports; set ``ORCI_BACKEND=python`` to
force the numpy implementation.
"""

import os

from . import _gk

BACKEND = "python"
_compiled = None
if os.environ.get("ORCI_BACKEND", "").lower() != "python":
    try:
        from . import _kernel as _compiled

        BACKEND = "cython"
    except ImportError:
        _compiled = None


def outcome_table(r, n_a, n_b, tol=_gk.ABS_TOL, max_subdivisions=_gk.MAX_SUBDIVISIONS, backend=None):
    """Probabilities of every outcome ``(x_a, x_b)`` at odds ratio ``0 < r < inf``.

    Returns an ``(n_a + 1, n_b + 1)`` array.
    """
    use = backend or BACKEND
    if use == "cython":
        if _compiled is None:
            raise ImportError("compiled kernel not available")
        return _compiled.outcome_table(float(r), int(n_a), int(n_b), float(tol), int(max_subdivisions))
    if use == "python":
        return _gk.outcome_table(float(r), int(n_a), int(n_b), tol, max_subdivisions)
    raise ValueError(f"unknown backend {use!r}")
