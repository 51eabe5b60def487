"""Kernel selection for the linear-program backend.

The compiled extension :mod:`cavmpc._lp_cy` is preferred; the pure-Python
twin :mod:`cavmpc._lp_py` is the fallback.  Both expose the same
``solve_lp`` / ``redundancy_filter`` pair with identical pivoting rules,
so results are bit-compatible.  Set ``CAVMPC_PURE_PYTHON=1`` to force the
fallback (used by the benchmark to compare the two).
"""

from __future__ import annotations

import os

from . import _lp_py
from ._lp_py import INFEASIBLE, MAXITER, OPTIMAL, UNBOUNDED

if os.environ.get("CAVMPC_PURE_PYTHON"):
    _kernel = _lp_py
    COMPILED = False
else:
    try:
        from . import _lp_cy as _kernel  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        _kernel = _lp_py
        COMPILED = False

KERNEL_NAME = "compiled" if COMPILED else "pure-python"


def solve(c, G, h, max_pivots=0):
    """Minimize ``c @ x`` s.t. ``G @ x <= h``; returns (status, x, obj)."""
    return _kernel.solve_lp(c, G, h, max_pivots)


def maximize(a, G, h):
    """Maximize ``a @ x`` s.t. ``G @ x <= h``; returns (status, x, value)."""
    status, x, obj = _kernel.solve_lp(-a, G, h, 0)
    if status == UNBOUNDED:
        return status, x, float("inf")
    return status, x, -obj


def redundancy_filter(A, b, tol):
    """Boolean keep-mask over the rows of {x : A x <= b}."""
    return _kernel.redundancy_filter(A, b, tol)


__all__ = [
    "COMPILED",
    "KERNEL_NAME",
    "INFEASIBLE",
    "MAXITER",
    "OPTIMAL",
    "UNBOUNDED",
    "solve",
    "maximize",
    "redundancy_filter",
]
